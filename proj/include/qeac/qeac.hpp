#pragma once

#include "qeac/circuits.hpp"
#include "qeac/dark_codes.hpp"
#include "qeac/dynamics.hpp"
#include "qeac/errors.hpp"
#include "qeac/io.hpp"
#include "qeac/linalg.hpp"
#include "qeac/noise_field.hpp"
#include "qeac/rep_theory.hpp"
#include "qeac/spin_ops.hpp"
