#pragma once

#include "absmin/analysis.hpp"
#include "absmin/certificate.hpp"
#include "absmin/error.hpp"
#include "absmin/hurwitz.hpp"
#include "absmin/nsopt.hpp"
#include "absmin/placement.hpp"
#include "absmin/plant.hpp"
#include "absmin/poly.hpp"
