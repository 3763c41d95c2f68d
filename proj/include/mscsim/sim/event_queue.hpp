#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <queue>
#include <string>
#include <vector>

namespace mscsim::sim {

struct Event {
  double time = 0.0;
  std::uint64_t sequence = 0;
  std::string label;
  std::function<void()> action;
};

struct DispatchRecord {
  double time;
  std::uint64_t sequence;
  std::string label;

  friend bool operator==(const DispatchRecord&, const DispatchRecord&) = default;
};

/// Discrete-event queue. Events run in (time, sequence) order, where the
/// sequence number is assigned at scheduling time, so equal-time events run in
/// insertion order.
class EventQueue {
 public:
  explicit EventQueue(bool keep_trace = false) : keep_trace_{keep_trace} {}

  /// Throws std::invalid_argument if time < now().
  std::uint64_t schedule(double time, std::function<void()> action, std::string label = {});

  /// Dispatches every event with time <= t_end. Returns how many ran.
  std::size_t run_until(double t_end);

  double now() const noexcept { return now_; }
  bool empty() const noexcept { return queue_.empty(); }
  std::size_t pending() const noexcept { return queue_.size(); }
  const std::vector<DispatchRecord>& trace() const noexcept { return trace_; }

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const noexcept {
      if (a.time != b.time) return a.time > b.time;
      return a.sequence > b.sequence;
    }
  };

  std::priority_queue<Event, std::vector<Event>, Later> queue_;
  double now_ = 0.0;
  std::uint64_t next_sequence_ = 0;
  bool keep_trace_;
  std::vector<DispatchRecord> trace_;
};

}  // namespace mscsim::sim
