#pragma once

#include "mwgfrft/error.hpp"
#include "mwgfrft/linalg.hpp"
#include "mwgfrft/graph.hpp"
#include "mwgfrft/spectral.hpp"
#include "mwgfrft/windows.hpp"
#include "mwgfrft/transforms.hpp"
#include "mwgfrft/fast_transform.hpp"
#include "mwgfrft/analysis.hpp"
#include "mwgfrft/signals.hpp"
#include "mwgfrft/bench.hpp"
#include "mwgfrft/io.hpp"
