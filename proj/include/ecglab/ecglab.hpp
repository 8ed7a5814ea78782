#pragma once

#include "ecglab/capture.hpp"
#include "ecglab/csvio.hpp"
#include "ecglab/detection.hpp"
#include "ecglab/filters.hpp"
#include "ecglab/frontend.hpp"
#include "ecglab/hrv.hpp"
#include "ecglab/signal.hpp"
#include "ecglab/spectrum.hpp"
#include "ecglab/svg.hpp"
#include "ecglab/synth.hpp"
#include "ecglab/wav.hpp"
