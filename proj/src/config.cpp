#include "specialprimes/config.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace sprimes {

namespace {

std::mutex g_mutex;
Limits g_limits;
std::atomic<std::size_t> g_threads{1};
thread_local bool t_in_worker = false;
thread_local int t_item_depth = 0;
thread_local std::vector<std::string>* t_notes = nullptr;
std::mutex g_trace_mutex;
TraceSink g_trace;

struct ItemScope {
  ItemScope() { ++t_item_depth; }
  ~ItemScope() { --t_item_depth; }
};

}  // namespace

Limits limits() {
  std::lock_guard<std::mutex> lock(g_mutex);
  return g_limits;
}

void set_limits(const Limits& l) {
  std::lock_guard<std::mutex> lock(g_mutex);
  g_limits = l;
}

std::size_t thread_count() { return g_threads.load(); }

void set_thread_count(std::size_t n) { g_threads.store(std::max<std::size_t>(1, n)); }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  std::size_t workers = std::min(thread_count(), n);
  if (workers <= 1 || t_in_worker) {
    for (std::size_t i = 0; i < n; ++i) {
      ItemScope scope;
      fn(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  auto body = [&] {
    t_in_worker = true;
    ItemScope scope;
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
    t_in_worker = false;
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(body);
  body();
  for (auto& t : pool) t.join();
  // Rethrow the failure with the lowest index so errors are schedule-independent.
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

void set_trace_sink(TraceSink sink) {
  std::lock_guard<std::mutex> lock(g_trace_mutex);
  g_trace = std::move(sink);
}

bool tracing() {
  std::lock_guard<std::mutex> lock(g_trace_mutex);
  return static_cast<bool>(g_trace) && t_item_depth == 0;
}

void trace(const std::string& line) {
  if (t_item_depth > 0) return;
  std::lock_guard<std::mutex> lock(g_trace_mutex);
  if (g_trace) g_trace(line);
}

NoteCapture::NoteCapture(std::vector<std::string>& sink) : prev_(t_notes) { t_notes = &sink; }

NoteCapture::~NoteCapture() { t_notes = prev_; }

void note(const std::string& line) {
  if (t_notes) t_notes->push_back(line);
}

}  // namespace sprimes
