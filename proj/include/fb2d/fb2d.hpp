#pragma once

#include "fb2d/channel.hpp"
#include "fb2d/complex_matrix.hpp"
#include "fb2d/equalizers.hpp"
#include "fb2d/fft.hpp"
#include "fb2d/filterbank.hpp"
#include "fb2d/grid.hpp"
#include "fb2d/harness.hpp"
#include "fb2d/link.hpp"
#include "fb2d/metrics.hpp"
#include "fb2d/otfs.hpp"
#include "fb2d/precoder.hpp"
#include "fb2d/prototype_filter.hpp"
#include "fb2d/qam.hpp"
