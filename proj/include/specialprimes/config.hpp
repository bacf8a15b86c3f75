#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace sprimes {

// Process-wide caps. Defaults match the documented limits; the CLI overrides
// them from --max-gb / --max-iter and the SPRIMES_MAX_GB / SPRIMES_MAX_ITER
// environment variables.
struct Limits {
  std::size_t max_gb = 10000;         // Groebner computations per minimal-primes call
  std::size_t star_iterations = 256;  // star-closure chain
  std::size_t kernel_iterations = 64; // stable-kernel chain
  std::size_t saturation_iterations = 64;
};

Limits limits();
void set_limits(const Limits& l);

// Worker threads used by the worklist algorithms. 1 means fully sequential.
std::size_t thread_count();
void set_thread_count(std::size_t n);

// Applies fn to every index in [0, n) using up to thread_count() workers.
// Results are stored by index, so the outcome never depends on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

// Progress lines for --trace. Lines are only delivered from the top-level
// driver loops, never from inside parallel_for items, so the trace does not
// depend on the thread count.
using TraceSink = std::function<void(const std::string&)>;
void set_trace_sink(TraceSink sink);
bool tracing();
void trace(const std::string& line);

// Branch notes recorded by single algorithm steps. A step running under a
// NoteCapture appends to its sink; the driver replays the sinks in canonical
// order through trace().
class NoteCapture {
 public:
  explicit NoteCapture(std::vector<std::string>& sink);
  ~NoteCapture();
  NoteCapture(const NoteCapture&) = delete;
  NoteCapture& operator=(const NoteCapture&) = delete;

 private:
  std::vector<std::string>* prev_;
};

void note(const std::string& line);

}  // namespace sprimes
