// Copyright 2026 The phoa-engine Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef PHOA_PHOA_HPP
#define PHOA_PHOA_HPP

#include "phoa/axioms.hpp"
#include "phoa/constructions.hpp"
#include "phoa/core.hpp"
#include "phoa/export.hpp"
#include "phoa/fincat.hpp"
#include "phoa/interval.hpp"
#include "phoa/locality.hpp"
#include "phoa/modelzoo.hpp"
#include "phoa/presheaf.hpp"
#include "phoa/report.hpp"
#include "phoa/session.hpp"
#include "phoa/shapes.hpp"
#include "phoa/topos.hpp"

#endif  // PHOA_PHOA_HPP
