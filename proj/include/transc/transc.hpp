#pragma once

#include "transc/core.hpp"
#include "transc/dataset.hpp"
#include "transc/eval.hpp"
#include "transc/geometry.hpp"
#include "transc/inference.hpp"
#include "transc/kg.hpp"
#include "transc/sampling.hpp"
#include "transc/training.hpp"
