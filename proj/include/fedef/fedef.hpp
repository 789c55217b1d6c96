// Copyright (c) 2026 fedef contributors
// SPDX-License-Identifier:    MIT

#pragma once

#include "analysis.hpp"
#include "cells.hpp"
#include "elements.hpp"
#include "maps.hpp"
#include "orthonormal.hpp"
#include "polyset.hpp"
#include "quadrature.hpp"
#include "span.hpp"
#include "verify.hpp"
