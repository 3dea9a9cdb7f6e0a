#pragma once

#include <string>
#include <vector>

#include "reseg/alignment.h"
#include "reseg/mwer.h"
#include "reseg/refine.h"
#include "reseg/text.h"

namespace reseg {

// One cross-lingual re-segmentation job.
//   asr_stream       source-language transcript, unsegmented
//   bt               back-translation, one segment per reference segment
//   ref_translation  target-language reference translation
struct ResegJob {
  TokenList asr_stream;
  SegmentedText bt;
  SegmentedText ref_translation;
};

// mWER-aligns the ASR stream against the back-translation, which mirrors the
// reference translation's segmentation.
SegmentedText xl_resegment(const ResegJob& job);

struct XlrResult {
  SegmentedText resegmented;
  std::vector<BoundaryDecision> decisions;
};

// xl_resegment followed by boundary refinement against the reference
// translation (not the back-translation).
XlrResult xlr_resegment(const ResegJob& job, WordAligner& aligner);

// Tab-separated decisions log with a header row.
std::string format_decisions(const std::vector<BoundaryDecision>& decisions);

}  // namespace reseg
