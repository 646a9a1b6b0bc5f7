// include/diarkit/overlap.h

// Copyright 2026  The diarkit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef DIARKIT_OVERLAP_H_
#define DIARKIT_OVERLAP_H_

#include <span>

#include "diarkit/timeline.h"

namespace diarkit {

// Adds a second speaker inside detected overlap.  Each region is cut at
// the diarization's own boundaries; on every piece where exactly one
// speaker is active, the other speaker whose closest segment boundary
// (start or end) lies nearest to the region center is added.  Distance
// ties go to the smaller label.  Pieces with zero or several speakers are
// left alone, as are recordings with a single speaker.  `regions` must be
// sorted and disjoint.
Hypothesis AssignOverlapSecondSpeaker(const Hypothesis &diarization,
                                      std::span<const TimeInterval> regions);

}  // namespace diarkit

#endif  // DIARKIT_OVERLAP_H_
