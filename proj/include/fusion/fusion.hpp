#pragma once

#include "fusion/canonical.hpp"
#include "fusion/criteria.hpp"
#include "fusion/dimensions.hpp"
#include "fusion/io.hpp"
#include "fusion/ring.hpp"
#include "fusion/search/enumerate.hpp"
#include "fusion/song/group.hpp"
#include "fusion/song/song.hpp"
#include "fusion/spectra/characters.hpp"
#include "fusion/spectra/modular.hpp"
#include "fusion/spectra/smith.hpp"
#include "fusion/substructure.hpp"
#include "fusion/validate.hpp"
