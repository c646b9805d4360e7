#pragma once

#include "modratio/errors.hpp"
#include "modratio/parallel.hpp"
#include "modratio/fpcore.hpp"
#include "modratio/geometry.hpp"
#include "modratio/expsums.hpp"
#include "modratio/counting.hpp"
#include "modratio/wellshaped.hpp"
