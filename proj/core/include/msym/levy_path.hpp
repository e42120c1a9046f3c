#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace msym {

/// Parameters of an m-channel compound Poisson noise with N(0, sigma^2) marks.
/// The Brownian part of the driving Levy process is not modelled.
struct LevyPathSpec {
  double rate = 0.0;        ///< jumps per unit time on each channel
  double mark_sigma = 0.0;  ///< standard deviation of the jump marks
  std::size_t noise_count = 1;
  std::uint64_t seed = 0;

  /// Throws InvalidSpecError on negative / non-finite values or zero channels.
  void validate() const;

  friend bool operator==(const LevyPathSpec&, const LevyPathSpec&) = default;
};

struct JumpEvent {
  double time = 0.0;
  std::size_t channel = 1;  ///< 1-based noise index r in 1..m
  double mark = 0.0;

  friend bool operator==(const JumpEvent&, const JumpEvent&) = default;
};

/// One realisation of the jump noise on (0, horizon].
///
/// Immutable once built. Every query uses the half-open convention (t0, t1]:
/// a jump sitting exactly on t1 belongs to the interval, one on t0 does not.
class LevyPath {
 public:
  /// Validates and stores a caller-supplied event list; events are sorted by
  /// (time, channel) with a stable sort. Throws DomainError if an event lies
  /// outside (0, horizon] or names a channel outside 1..m.
  LevyPath(LevyPathSpec spec, double horizon, std::vector<JumpEvent> events);

  const LevyPathSpec& spec() const noexcept { return spec_; }
  double horizon() const noexcept { return horizon_; }
  std::size_t noise_count() const noexcept { return spec_.noise_count; }
  std::span<const JumpEvent> events() const noexcept { return events_; }

  /// Sum of the marks of `channel` events with time in (t0, t1].
  double increment(std::size_t channel, double t0, double t1) const;

  /// L^r(t): cumulative mark sum on (0, t].
  double value_at(std::size_t channel, double t) const { return increment(channel, 0.0, t); }

  /// All events (any channel) with time in (t0, t1], in path order.
  std::vector<JumpEvent> jumps_in(double t0, double t1) const;

  /// Element j is increment(channel, grid[j], grid[j+1]). The grid must be
  /// strictly increasing and inside [0, horizon].
  std::vector<double> grid_increments(std::size_t channel, std::span<const double> grid) const;

 private:
  struct Channel {
    std::vector<double> times;
    std::vector<double> marks;
  };

  void check_interval(double t0, double t1) const;
  void check_channel(std::size_t channel) const;

  LevyPathSpec spec_;
  double horizon_;
  std::vector<JumpEvent> events_;
  std::vector<Channel> channels_;
};

/// Samples a path: per channel, i.i.d. exponential waiting times with rate
/// `spec.rate` and N(0, mark_sigma^2) marks, drawn from a stream keyed by
/// (seed, channel). A deterministic function of (spec, horizon).
LevyPath sample_path(const LevyPathSpec& spec, double horizon);

/// Writes `time,channel,mark` rows (17 significant digits).
void write_path_csv(std::ostream& out, const LevyPath& path);

/// Reads the format written by write_path_csv; the spec and horizon are not
/// part of the file and must be supplied.
LevyPath read_path_csv(std::istream& in, const LevyPathSpec& spec, double horizon);

}  // namespace msym
