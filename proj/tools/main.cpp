// Copyright (c) 2026 fedef contributors
// SPDX-License-Identifier:    MIT

#include <fedef/fedef.hpp>

int main() { return 0; }
