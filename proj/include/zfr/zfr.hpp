#pragma once

#include "zfr/classical.hpp"
#include "zfr/compensated.hpp"
#include "zfr/config.hpp"
#include "zfr/digamma.hpp"
#include "zfr/emit.hpp"
#include "zfr/exceptional.hpp"
#include "zfr/mt16.hpp"
#include "zfr/parallel.hpp"
#include "zfr/polysearch.hpp"
#include "zfr/trigpoly.hpp"
#include "zfr/version.hpp"
