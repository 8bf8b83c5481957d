#pragma once

#include "holonomy/connection.hpp"
#include "holonomy/error.hpp"
#include "holonomy/gauge.hpp"
#include "holonomy/geometry.hpp"
#include "holonomy/germs.hpp"
#include "holonomy/group.hpp"
#include "holonomy/groupoid.hpp"
#include "holonomy/hyph.hpp"
#include "holonomy/measure.hpp"
#include "holonomy/rational.hpp"
