#pragma once

#include "expdrem/signals.hpp"
#include "expdrem/lti.hpp"
#include "expdrem/transform.hpp"
#include "expdrem/drem.hpp"
#include "expdrem/estimators.hpp"
#include "expdrem/rk4.hpp"
#include "expdrem/sim.hpp"
#include "expdrem/presets.hpp"
#include "expdrem/io.hpp"
#include "expdrem/report.hpp"
#include "expdrem/app.hpp"
