#pragma once
#include "qpg/dispersion.hpp"
#include "qpg/efficiency.hpp"
#include "qpg/errors.hpp"
#include "qpg/grid.hpp"
#include "qpg/io.hpp"
#include "qpg/jsa.hpp"
#include "qpg/material.hpp"
#include "qpg/peak.hpp"
#include "qpg/phasematching.hpp"
#include "qpg/photonstats.hpp"
#include "qpg/processfinder.hpp"
#include "qpg/units.hpp"
