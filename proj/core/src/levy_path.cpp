#include "msym/levy_path.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include "msym/errors.hpp"
#include "msym/io.hpp"
#include "msym/rng.hpp"

namespace msym {

void LevyPathSpec::validate() const {
  if (!std::isfinite(rate) || rate < 0.0) {
    throw InvalidSpecError("jump rate must be finite and >= 0, got " + io::format_double(rate));
  }
  if (!std::isfinite(mark_sigma) || mark_sigma < 0.0) {
    throw InvalidSpecError("mark sigma must be finite and >= 0, got " +
                           io::format_double(mark_sigma));
  }
  if (noise_count < 1) throw InvalidSpecError("noise_count must be >= 1");
}

LevyPath::LevyPath(LevyPathSpec spec, double horizon, std::vector<JumpEvent> events)
    : spec_(spec), horizon_(horizon), events_(std::move(events)) {
  spec_.validate();
  if (!std::isfinite(horizon_) || horizon_ <= 0.0) {
    throw DomainError("path horizon must be finite and > 0");
  }
  for (const auto& e : events_) {
    if (!(e.time > 0.0 && e.time <= horizon_)) {
      throw DomainError("jump time " + io::format_double(e.time) + " outside (0, horizon]");
    }
    if (e.channel < 1 || e.channel > spec_.noise_count) {
      throw DomainError("jump channel " + std::to_string(e.channel) + " outside 1.." +
                        std::to_string(spec_.noise_count));
    }
    if (!std::isfinite(e.mark)) throw DomainError("non-finite jump mark");
  }
  std::stable_sort(events_.begin(), events_.end(), [](const JumpEvent& a, const JumpEvent& b) {
    if (a.time != b.time) return a.time < b.time;
    return a.channel < b.channel;
  });

  channels_.resize(spec_.noise_count);
  for (const auto& e : events_) {
    auto& ch = channels_[e.channel - 1];
    ch.times.push_back(e.time);
    ch.marks.push_back(e.mark);
  }
}

void LevyPath::check_interval(double t0, double t1) const {
  if (!(t0 >= 0.0 && t0 <= t1 && t1 <= horizon_)) {
    throw DomainError("interval (" + io::format_double(t0) + ", " + io::format_double(t1) +
                      "] not inside [0, " + io::format_double(horizon_) + "]");
  }
}

void LevyPath::check_channel(std::size_t channel) const {
  if (channel < 1 || channel > spec_.noise_count) {
    throw DomainError("channel " + std::to_string(channel) + " outside 1.." +
                      std::to_string(spec_.noise_count));
  }
}

double LevyPath::increment(std::size_t channel, double t0, double t1) const {
  check_channel(channel);
  check_interval(t0, t1);
  const auto& ch = channels_[channel - 1];
  const auto first = std::upper_bound(ch.times.begin(), ch.times.end(), t0) - ch.times.begin();
  const auto last = std::upper_bound(ch.times.begin(), ch.times.end(), t1) - ch.times.begin();
  double sum = 0.0;
  for (auto k = first; k < last; ++k) sum += ch.marks[static_cast<std::size_t>(k)];
  return sum;
}

std::vector<JumpEvent> LevyPath::jumps_in(double t0, double t1) const {
  check_interval(t0, t1);
  const auto first = std::partition_point(events_.begin(), events_.end(),
                                          [t0](const JumpEvent& e) { return e.time <= t0; });
  const auto last = std::partition_point(first, events_.end(),
                                         [t1](const JumpEvent& e) { return e.time <= t1; });
  return {first, last};
}

std::vector<double> LevyPath::grid_increments(std::size_t channel,
                                              std::span<const double> grid) const {
  check_channel(channel);
  if (grid.size() < 2) throw DomainError("grid needs at least two nodes");
  for (std::size_t j = 0; j + 1 < grid.size(); ++j) {
    if (!(grid[j] < grid[j + 1])) throw DomainError("grid must be strictly increasing");
  }
  check_interval(grid.front(), grid.back());

  const auto& ch = channels_[channel - 1];
  std::vector<double> out(grid.size() - 1, 0.0);
  auto k = static_cast<std::size_t>(std::upper_bound(ch.times.begin(), ch.times.end(),
                                                     grid.front()) -
                                    ch.times.begin());
  for (std::size_t j = 0; j + 1 < grid.size(); ++j) {
    double sum = 0.0;
    while (k < ch.times.size() && ch.times[k] <= grid[j + 1]) sum += ch.marks[k++];
    out[j] = sum;
  }
  return out;
}

LevyPath sample_path(const LevyPathSpec& spec, double horizon) {
  spec.validate();
  if (!std::isfinite(horizon) || horizon <= 0.0) {
    throw DomainError("path horizon must be finite and > 0");
  }
  std::vector<JumpEvent> events;
  if (spec.rate > 0.0) {
    for (std::size_t r = 1; r <= spec.noise_count; ++r) {
      RandomStream stream(derive_seed(spec.seed, {r}));
      double t = 0.0;
      while (true) {
        t += stream.exponential(spec.rate);
        if (t > horizon) break;
        const double mark = stream.normal(0.0, spec.mark_sigma);
        // a zero waiting time would violate 0 < time; probability ~2^-53
        if (t > 0.0) events.push_back({t, r, mark});
      }
    }
  }
  return LevyPath(spec, horizon, std::move(events));
}

void write_path_csv(std::ostream& out, const LevyPath& path) {
  out << "time,channel,mark\n";
  for (const auto& e : path.events()) {
    out << io::format_double(e.time) << ',' << e.channel << ',' << io::format_double(e.mark)
        << '\n';
  }
}

LevyPath read_path_csv(std::istream& in, const LevyPathSpec& spec, double horizon) {
  std::string line;
  if (!std::getline(in, line) || io::split_csv_line(line) !=
                                     std::vector<std::string>{"time", "channel", "mark"}) {
    throw DomainError("path CSV must start with header 'time,channel,mark'");
  }
  std::vector<JumpEvent> events;
  std::size_t row = 1;
  double previous = 0.0;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const auto fields = io::split_csv_line(line);
    if (fields.size() != 3) {
      throw DomainError("path CSV row " + std::to_string(row) + ": expected 3 fields");
    }
    JumpEvent e;
    e.time = io::parse_double(fields[0]);
    const double channel = io::parse_double(fields[1]);
    if (channel < 1 || channel != std::floor(channel)) {
      throw DomainError("path CSV row " + std::to_string(row) + ": bad channel");
    }
    e.channel = static_cast<std::size_t>(channel);
    e.mark = io::parse_double(fields[2]);
    if (e.time < previous) {
      throw DomainError("path CSV row " + std::to_string(row) + ": times not ascending");
    }
    previous = e.time;
    events.push_back(e);
  }
  return LevyPath(spec, horizon, std::move(events));
}

}  // namespace msym
