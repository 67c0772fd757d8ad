#include "catamp/logging.hpp"

#include <atomic>
#include <iostream>
#include <mutex>

namespace catamp {
namespace {

std::mutex sink_mutex;
WarningSink current_sink;
std::atomic<long> emitted{0};

}  // namespace

void warn(const std::string& message) {
  ++emitted;
  std::lock_guard lock(sink_mutex);
  if (current_sink) {
    current_sink(message);
  } else {
    std::cerr << "[catamp] warning: " << message << '\n';
  }
}

void set_warning_sink(WarningSink sink) {
  std::lock_guard lock(sink_mutex);
  current_sink = std::move(sink);
}

long warning_count() { return emitted.load(); }

}  // namespace catamp
