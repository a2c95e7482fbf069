#pragma once

#include "dsbranch/blattner.hpp"
#include "dsbranch/catalog.hpp"
#include "dsbranch/characters.hpp"
#include "dsbranch/error.hpp"
#include "dsbranch/geometry.hpp"
#include "dsbranch/induction.hpp"
#include "dsbranch/partition.hpp"
#include "dsbranch/rational.hpp"
#include "dsbranch/root_system.hpp"
#include "dsbranch/serialize.hpp"
