#pragma once

// Built-in oracle battery behind `latkep selftest`. Returns the number of
// failed checks.
int run_selftest();
