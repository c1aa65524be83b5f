#pragma once

#include "sumdiff/bigint.hpp"
#include "sumdiff/construct.hpp"
#include "sumdiff/minimize1d.hpp"
#include "sumdiff/optimize.hpp"
#include "sumdiff/ratefn.hpp"
#include "sumdiff/wcount.hpp"
