#pragma once

// Everything except the calculator front end (fermat/cli/).

#include "fermat/core/errors.hpp"
#include "fermat/core/rational.hpp"
#include "fermat/core/scalar.hpp"
#include "fermat/fermat_real.hpp"
#include "fermat/representative.hpp"
#include "fermat/smooth/expr.hpp"
#include "fermat/smooth/parse.hpp"
#include "fermat/smooth/eval.hpp"
#include "fermat/smooth/ext.hpp"
#include "fermat/sets/open_set.hpp"
#include "fermat/sets/relation.hpp"
#include "fermat/hyper/ep_set.hpp"
#include "fermat/hyper/power_sum.hpp"
#include "fermat/hyper/seq_expr.hpp"
#include "fermat/hyper/filter_oracle.hpp"
#include "fermat/hyper/real_set.hpp"
#include "fermat/hyper/hyper.hpp"
#include "fermat/hyper/star.hpp"
#include "fermat/hyper/hyper_frac.hpp"
