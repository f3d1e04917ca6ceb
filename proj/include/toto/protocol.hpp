#pragma once

#include <cstddef>
#include <vector>

namespace toto {

struct Segment {
  double u = 0.0;
  double duration = 0.0;
};

/// Piecewise-constant control schedule. Every duration is strictly positive
/// and adjacent segments use different control values.
class BangBangProtocol {
 public:
  BangBangProtocol() = default;
  explicit BangBangProtocol(std::vector<Segment> segments);

  const std::vector<Segment>& segments() const { return segments_; }
  std::size_t size() const { return segments_.size(); }
  bool empty() const { return segments_.empty(); }
  /// Number of control jumps strictly inside (0, T).
  std::size_t switch_count() const { return segments_.empty() ? 0 : segments_.size() - 1; }
  double total_time() const;

 private:
  std::vector<Segment> segments_;
};

}  // namespace toto
