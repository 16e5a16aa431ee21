#pragma once

#include "qzeta/identities.hpp"
#include "qzeta/mhs.hpp"
#include "qzeta/qkernel.hpp"
#include "qzeta/rational.hpp"
#include "qzeta/series.hpp"
#include "qzeta/strings.hpp"
