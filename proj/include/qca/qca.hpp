#pragma once

#include "qca/arrays.hpp"
#include "qca/asymptotics.hpp"
#include "qca/correlation.hpp"
#include "qca/errors.hpp"
#include "qca/fft.hpp"
#include "qca/finite_field.hpp"
#include "qca/identities.hpp"
#include "qca/prng.hpp"
#include "qca/rational.hpp"
#include "qca/search.hpp"
