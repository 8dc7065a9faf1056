#pragma once

#include "wakedet/bench.hpp"
#include "wakedet/config.hpp"
#include "wakedet/detect.hpp"
#include "wakedet/error.hpp"
#include "wakedet/geometry.hpp"
#include "wakedet/image.hpp"
#include "wakedet/metrics.hpp"
#include "wakedet/noise.hpp"
#include "wakedet/pgm.hpp"
#include "wakedet/radon.hpp"
#include "wakedet/shrinkage.hpp"
#include "wakedet/synth.hpp"
#include "wakedet/wavelet.hpp"
