/*
 * Umbrella header: the whole library in one include.
 *
 *   mask           ground sets, subset masks, families, D specifications
 *   core           imbalance, verification, family generation
 *   io             JSON and compact-hex family serialization
 *   rng            counter-based splittable random streams
 *   constructions  deterministic D-secting families with verifiable claims
 *   randomized     threshold-accepted and resampling-based constructions
 *   solver         exact minimum D-secting families and discrepancy
 *   bounds         closed-form bound evaluators and consistency-checked reports
 *   cli            command-line front end (construct / verify / solve / ...)
 */
#ifndef BISECT_BISECT_HPP
#define BISECT_BISECT_HPP

#include "bisect/bounds.hpp"
#include "bisect/cli.hpp"
#include "bisect/constructions.hpp"
#include "bisect/core.hpp"
#include "bisect/io.hpp"
#include "bisect/mask.hpp"
#include "bisect/randomized.hpp"
#include "bisect/rng.hpp"
#include "bisect/solver.hpp"

#endif
