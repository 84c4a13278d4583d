// Copyright (c) 2026 synsim contributors
//
// This code is released under the
// Apache License Version 2.0 http://www.apache.org/licenses/.

#pragma once

#include "synsim/errors.hpp"
#include "synsim/explanation.hpp"
#include "synsim/harness.hpp"
#include "synsim/io.hpp"
#include "synsim/mapping.hpp"
#include "synsim/measures.hpp"
#include "synsim/simulate.hpp"
#include "synsim/synonymity.hpp"
