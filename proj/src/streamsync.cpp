#include "mintent/streamsync.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mintent {

OffsetEstimate estimate_offset(const std::vector<std::pair<double, double>>& pairs) {
  if (pairs.size() < 2) {
    throw InsufficientDataError("offset estimation needs at least 2 timestamp pairs, got " +
                                std::to_string(pairs.size()));
  }
  // constant-shift model: the least-squares offset is the mean residual
  double sum = 0.0;
  for (const auto& [local_t, master_t] : pairs) sum += master_t - local_t;
  const double offset = sum / static_cast<double>(pairs.size());
  double sq = 0.0;
  for (const auto& [local_t, master_t] : pairs) {
    const double r = master_t - local_t - offset;
    sq += r * r;
  }
  return {offset, std::sqrt(sq / static_cast<double>(pairs.size()))};
}

AlignedBundle align(const std::map<std::string, Stream>& streams, double master_rate_hz,
                    AlignPolicy policy) {
  if (master_rate_hz <= 0.0) throw ConfigError("master rate must be positive");
  if (streams.empty()) throw InsufficientDataError("align needs at least one stream");

  double t0 = -1e300, t1 = 1e300;
  for (const auto& [name, s] : streams) {
    if (s.samples.empty()) throw InsufficientDataError("stream '" + name + "' is empty");
    t0 = std::max(t0, s.start_time() + s.clock_offset_s);
    t1 = std::min(t1, s.end_time() + s.clock_offset_s);
  }
  if (t0 > t1) throw StreamValidationError("stream time ranges do not overlap");

  AlignedBundle bundle;
  const int n = static_cast<int>(std::floor((t1 - t0) * master_rate_hz + 1e-9)) + 1;
  bundle.master_times.reserve(n);
  for (int i = 0; i < n; ++i) {
    bundle.master_times.push_back(t0 + static_cast<double>(i) / master_rate_hz);
  }

  for (const auto& [name, s] : streams) {
    AlignedStream out;
    out.dim = s.dim;
    out.data.reserve(static_cast<std::size_t>(n) * s.dim);
    out.max_alignment_error_s = 0.0;

    std::size_t cursor = 0;  // source samples are sorted; sweep once
    for (double t : bundle.master_times) {
      const double local_t = t - s.clock_offset_s;
      // first sample with time >= local_t
      while (cursor < s.samples.size() && s.samples[cursor].t < local_t) ++cursor;

      if (policy == AlignPolicy::NearestSample) {
        std::size_t pick;
        if (cursor == 0) {
          pick = 0;
        } else if (cursor >= s.samples.size()) {
          pick = s.samples.size() - 1;
        } else {
          const double d_hi = s.samples[cursor].t - local_t;
          const double d_lo = local_t - s.samples[cursor - 1].t;
          pick = d_lo <= d_hi ? cursor - 1 : cursor;  // ties go to the earlier sample
        }
        out.max_alignment_error_s =
            std::max(out.max_alignment_error_s, std::abs(s.samples[pick].t - local_t));
        for (double v : s.samples[pick].value) out.data.push_back(v);
      } else {
        if (cursor == 0) {
          // exact hit on the first sample (grid never precedes the overlap)
          for (double v : s.samples[0].value) out.data.push_back(v);
          continue;
        }
        if (cursor >= s.samples.size()) {
          // grid time can exceed the last sample only by the 1e-9 grid slack
          for (double v : s.samples.back().value) out.data.push_back(v);
          continue;
        }
        const auto& hi = s.samples[cursor];
        const auto& lo = s.samples[cursor - 1];
        if (hi.t == local_t) {
          for (double v : hi.value) out.data.push_back(v);
          continue;
        }
        const double w = (local_t - lo.t) / (hi.t - lo.t);
        for (int d = 0; d < s.dim; ++d) {
          out.data.push_back(lo.value[d] + w * (hi.value[d] - lo.value[d]));
        }
      }
    }
    bundle.streams.emplace(name, std::move(out));
  }
  return bundle;
}

std::string AlignedBundle::to_csv(const std::string& meta_comment) const {
  std::ostringstream out;
  if (!meta_comment.empty()) {
    for (const auto& line : split(meta_comment, '\n')) out << "## " << line << "\n";
  }
  out << "t";
  for (const auto& [name, s] : streams) {
    for (int d = 0; d < s.dim; ++d) out << "," << name << "__c" << d;
  }
  out << "\n";
  for (std::size_t i = 0; i < master_times.size(); ++i) {
    out << fmt_double(master_times[i]);
    for (const auto& [name, s] : streams) {
      for (int d = 0; d < s.dim; ++d) {
        out << "," << fmt_double(s.data[i * s.dim + d]);
      }
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace mintent
