#ifndef LAGAME_LAGAME_HPP
#define LAGAME_LAGAME_HPP

#include "lagame/dynamics.hpp"
#include "lagame/errors.hpp"
#include "lagame/game.hpp"
#include "lagame/harness.hpp"
#include "lagame/io.hpp"
#include "lagame/learner.hpp"
#include "lagame/random.hpp"
#include "lagame/trajectory.hpp"

#endif  // LAGAME_LAGAME_HPP
