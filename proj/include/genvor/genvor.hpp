#pragma once

#include "genvor/diagram.hpp"
#include "genvor/engine.hpp"
#include "genvor/error.hpp"
#include "genvor/experiments.hpp"
#include "genvor/geometry.hpp"
#include "genvor/instance_io.hpp"
#include "genvor/label.hpp"
#include "genvor/locate.hpp"
#include "genvor/models.hpp"
#include "genvor/oracle.hpp"
#include "genvor/rational.hpp"
#include "genvor/rng.hpp"
#include "genvor/site_set.hpp"
#include "genvor/svg.hpp"
#include "genvor/validate.hpp"
#include "genvor/version.hpp"
