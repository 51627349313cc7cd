#pragma once

// Umbrella header.

#include "crosschar/numtheory.hpp"
#include "crosschar/ffield.hpp"
#include "crosschar/linalg.hpp"
#include "crosschar/chars.hpp"
#include "crosschar/sl2.hpp"
#include "crosschar/rep.hpp"
#include "crosschar/module.hpp"
#include "crosschar/spin.hpp"
#include "crosschar/weights.hpp"
#include "crosschar/jordan.hpp"
#include "crosschar/meataxe.hpp"
#include "crosschar/report.hpp"
#include "crosschar/experiments.hpp"
#include "crosschar/probes.hpp"
#include "crosschar/suite.hpp"
