#pragma once

#include "qmod/arith.hpp"
#include "qmod/basis.hpp"
#include "qmod/congruences.hpp"
#include "qmod/convolution.hpp"
#include "qmod/error.hpp"
#include "qmod/eta.hpp"
#include "qmod/forms.hpp"
#include "qmod/genus0.hpp"
#include "qmod/genus1.hpp"
#include "qmod/level1.hpp"
#include "qmod/report.hpp"
#include "qmod/series.hpp"
#include "qmod/suites.hpp"
