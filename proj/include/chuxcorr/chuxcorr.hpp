#pragma once

#include <chuxcorr/chu.hpp>
#include <chuxcorr/distribution.hpp>
#include <chuxcorr/numtheory.hpp>
#include <chuxcorr/selection.hpp>
#include <chuxcorr/xcorr_theory.hpp>
