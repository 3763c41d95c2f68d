#include "mscsim/sim/event_queue.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace mscsim::sim {

std::uint64_t EventQueue::schedule(double time, std::function<void()> action, std::string label) {
  if (!std::isfinite(time)) throw std::invalid_argument("EventQueue::schedule: non-finite time");
  if (time < now_) {
    throw std::invalid_argument("EventQueue::schedule: event at t=" + std::to_string(time) +
                                " is before now=" + std::to_string(now_));
  }
  const std::uint64_t seq = next_sequence_++;
  queue_.push(Event{time, seq, std::move(label), std::move(action)});
  return seq;
}

std::size_t EventQueue::run_until(double t_end) {
  std::size_t dispatched = 0;
  while (!queue_.empty() && queue_.top().time <= t_end) {
    // priority_queue::top is const; the event is copied out before pop.
    Event ev = queue_.top();
    queue_.pop();
    now_ = ev.time;
    if (keep_trace_) trace_.push_back({ev.time, ev.sequence, ev.label});
    if (ev.action) ev.action();
    ++dispatched;
  }
  return dispatched;
}

}  // namespace mscsim::sim
