#include "toto/protocol.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace toto {

BangBangProtocol::BangBangProtocol(std::vector<Segment> segments) : segments_(std::move(segments)) {
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const Segment& seg = segments_[i];
    if (!(seg.duration > 0.0) || !std::isfinite(seg.duration))
      throw std::invalid_argument("segment " + std::to_string(i) + " has non-positive duration");
    if (!(seg.u > 0.0) || !std::isfinite(seg.u))
      throw std::invalid_argument("segment " + std::to_string(i) + " has non-positive control");
    if (i > 0 && segments_[i - 1].u == seg.u)
      throw std::invalid_argument("controls must alternate between segments " +
                                  std::to_string(i - 1) + " and " + std::to_string(i));
  }
}

double BangBangProtocol::total_time() const {
  double t = 0.0;
  for (const Segment& seg : segments_) t += seg.duration;
  return t;
}

}  // namespace toto
