// Umbrella header for the LDCT corruption-simulation and evaluation library.

#pragma once

#include "ldct/artifacts.hpp"
#include "ldct/augment.hpp"
#include "ldct/baseline.hpp"
#include "ldct/clf_metrics.hpp"
#include "ldct/config.hpp"
#include "ldct/csv.hpp"
#include "ldct/dataset.hpp"
#include "ldct/denoise.hpp"
#include "ldct/dose.hpp"
#include "ldct/errors.hpp"
#include "ldct/features.hpp"
#include "ldct/image.hpp"
#include "ldct/iq_metrics.hpp"
#include "ldct/logreg.hpp"
#include "ldct/phantom.hpp"
#include "ldct/png_io.hpp"
#include "ldct/report.hpp"
#include "ldct/rng.hpp"
#include "ldct/scores.hpp"
#include "ldct/version.hpp"
