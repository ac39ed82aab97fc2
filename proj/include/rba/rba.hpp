#pragma once

#include "rba/errors.hpp"
#include "rba/rational.hpp"
#include "rba/matrix.hpp"
#include "rba/linear_algebra.hpp"
#include "rba/leibniz.hpp"
#include "rba/cochain.hpp"
#include "rba/rota_baxter.hpp"
#include "rba/cohomology.hpp"
#include "rba/shuffle.hpp"
#include "rba/graded_lie.hpp"
#include "rba/deformation.hpp"
#include "rba/io.hpp"
#include "rba/commands.hpp"
