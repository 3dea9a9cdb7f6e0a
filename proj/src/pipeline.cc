#include "reseg/pipeline.h"

#include "reseg/error.h"

namespace reseg {

namespace {

void check_job(const ResegJob& job) {
  if (job.bt.size() == 0) throw DataError("back-translation has no segments");
  if (job.bt.size() != job.ref_translation.size())
    throw LengthMismatchError("back-translation and reference translation segment counts differ",
                              job.bt.size(), job.ref_translation.size());
}

}  // namespace

SegmentedText xl_resegment(const ResegJob& job) {
  check_job(job);
  return mwer_segment(job.asr_stream, job.bt).resegmented;
}

XlrResult xlr_resegment(const ResegJob& job, WordAligner& aligner) {
  SegmentedText xl = xl_resegment(job);
  RefinementResult refined = refine_all(xl, job.ref_translation, aligner);
  return {std::move(refined.refined), std::move(refined.decisions)};
}

std::string format_decisions(const std::vector<BoundaryDecision>& decisions) {
  std::string out = "boundary\told_split\tnew_split\tcross_before\tcross_after\n";
  for (const auto& d : decisions) {
    out += std::to_string(d.boundary_index) + '\t' + std::to_string(d.old_split) + '\t' +
           std::to_string(d.new_split) + '\t' + std::to_string(d.cross_count_before) + '\t' +
           std::to_string(d.cross_count_after) + '\n';
  }
  return out;
}

}  // namespace reseg
