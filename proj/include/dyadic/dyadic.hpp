#pragma once

#include "errors.hpp"
#include "fraction.hpp"
#include "word.hpp"
#include "sequences.hpp"
#include "sft.hpp"
#include "dimension.hpp"
#include "report.hpp"
