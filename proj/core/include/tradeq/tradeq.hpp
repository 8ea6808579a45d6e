#pragma once

#include "tradeq/equilibrium.hpp"
#include "tradeq/errors.hpp"
#include "tradeq/irreducibility.hpp"
#include "tradeq/matrix.hpp"
#include "tradeq/structure_builder.hpp"
#include "tradeq/tariff.hpp"
#include "tradeq/trade_core.hpp"
