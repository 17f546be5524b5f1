#include "rootcert/parallel.hpp"

#include <cstdlib>
#include <string>

namespace rootcert {

int default_threads() {
  if (const char* env = std::getenv("ROOTCERT_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (...) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace rootcert
