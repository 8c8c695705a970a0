#include "dtn/clock.hpp"

#include <algorithm>
#include <cmath>

namespace dtn {

std::int64_t ClockModel::local_ms(std::int64_t true_ms) const {
  return true_ms + offset_s * 1000 +
         static_cast<std::int64_t>(std::llround(drift * static_cast<double>(true_ms)));
}

std::int64_t ClockModel::local_s(std::int64_t true_ms) const {
  std::int64_t ms = local_ms(true_ms);
  // floor division; local clocks can sit before the epoch under skew
  std::int64_t q = ms / 1000;
  if (ms % 1000 != 0 && ms < 0) --q;
  return q;
}

std::int64_t ClockModel::measured_ms(std::int64_t true_elapsed_ms) const {
  double scaled = (1.0 + drift) * static_cast<double>(true_elapsed_ms);
  return std::max<std::int64_t>(0, static_cast<std::int64_t>(std::llround(scaled)));
}

}  // namespace dtn
