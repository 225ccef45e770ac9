#pragma once

#include "laurent.hpp"
#include "linalg.hpp"
#include "param_poly.hpp"
#include "tensor.hpp"
