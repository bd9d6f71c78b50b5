#pragma once

// Umbrella header for the futures-market game engine.

#include "futgame/compromise.hpp"
#include "futgame/dp.hpp"
#include "futgame/errors.hpp"
#include "futgame/game.hpp"
#include "futgame/io.hpp"
#include "futgame/market.hpp"
#include "futgame/oracle.hpp"
#include "futgame/scenario.hpp"
#include "futgame/trajectory.hpp"
#include "futgame/types.hpp"
#include "futgame/version.hpp"
#include "futgame/wealth.hpp"
