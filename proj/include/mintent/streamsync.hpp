#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mintent/dataset.hpp"

namespace mintent {

struct OffsetEstimate {
  double offset_s{0.0};
  double residual_rms_s{0.0};
};

// Least-squares constant clock shift: minimizes sum (master_t - local_t - offset)^2
// over the given (local_t, master_t) pairs. Needs at least two pairs.
OffsetEstimate estimate_offset(const std::vector<std::pair<double, double>>& pairs);

enum class AlignPolicy { NearestSample, LinearInterp };

struct AlignedStream {
  int dim{0};
  std::vector<double> data;            // row-major, len(master_times) x dim
  double max_alignment_error_s{0.0};   // worst |grid time - source time used|
};

struct AlignedBundle {
  std::vector<double> master_times;
  std::map<std::string, AlignedStream> streams;

  // wide CSV: t,<stream>__c<k>,... columns in stream-name order
  std::string to_csv(const std::string& meta_comment = "") const;
};

// Resamples every stream onto a uniform master grid spanning the intersection
// of the (offset-corrected) stream time ranges. No extrapolation: the grid is
// confined to the overlap window.
AlignedBundle align(const std::map<std::string, Stream>& streams,
                    double master_rate_hz, AlignPolicy policy);

}  // namespace mintent
