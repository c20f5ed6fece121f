#ifndef LTRACK_LTRACK_HPP
#define LTRACK_LTRACK_HPP

#include "ltrack/bg_augment.hpp"
#include "ltrack/config.hpp"
#include "ltrack/dcf_tracker.hpp"
#include "ltrack/erase_consensus.hpp"
#include "ltrack/features.hpp"
#include "ltrack/geometry.hpp"
#include "ltrack/harness.hpp"
#include "ltrack/image.hpp"
#include "ltrack/localizer.hpp"
#include "ltrack/metrics.hpp"
#include "ltrack/orchestrator.hpp"
#include "ltrack/pgm.hpp"
#include "ltrack/protocol.hpp"
#include "ltrack/redetect.hpp"
#include "ltrack/rng.hpp"
#include "ltrack/sequence_io.hpp"
#include "ltrack/synth.hpp"

#endif  // LTRACK_LTRACK_HPP
