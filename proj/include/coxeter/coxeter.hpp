#pragma once

#include "coxeter/canonical.hpp"
#include "coxeter/classify.hpp"
#include "coxeter/diagram_text.hpp"
#include "coxeter/enumerate.hpp"
#include "coxeter/errors.hpp"
#include "coxeter/experiments.hpp"
#include "coxeter/gram.hpp"
#include "coxeter/hyperbolic.hpp"
#include "coxeter/label.hpp"
#include "coxeter/parabolic.hpp"
#include "coxeter/report.hpp"
#include "coxeter/surd.hpp"
#include "coxeter/system.hpp"
#include "coxeter/threshold.hpp"
#include "coxeter/version.hpp"
