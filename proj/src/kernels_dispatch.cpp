// Copyright 2026 The fockbench authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <atomic>
#include <cstdlib>

#include "fockbench/kernels.hpp"

namespace fockbench::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(FOCKBENCH_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* best_available() {
#if defined(FOCKBENCH_HAVE_AVX2)
  if (cpu_has_avx2()) return &avx2_table();
#endif
#if defined(FOCKBENCH_HAVE_NEON)
  return &neon_table();
#endif
  return &scalar_table();
}

const KernelTable* lookup(std::string_view name) {
  if (name == "auto") return best_available();
  if (name == "scalar") return &scalar_table();
#if defined(FOCKBENCH_HAVE_AVX2)
  if (name == "avx2" && cpu_has_avx2()) return &avx2_table();
#endif
#if defined(FOCKBENCH_HAVE_NEON)
  if (name == "neon") return &neon_table();
#endif
  return nullptr;
}

std::atomic<const KernelTable*>& active_slot() {
  static std::atomic<const KernelTable*> slot{[] {
    if (const char* env = std::getenv("FOCKBENCH_KERNELS")) {
      if (const KernelTable* t = lookup(env)) return t;
    }
    return best_available();
  }()};
  return slot;
}

}  // namespace

std::vector<std::string> available() {
  std::vector<std::string> names{"scalar"};
#if defined(FOCKBENCH_HAVE_AVX2)
  if (cpu_has_avx2()) names.emplace_back("avx2");
#endif
#if defined(FOCKBENCH_HAVE_NEON)
  names.emplace_back("neon");
#endif
  return names;
}

const KernelTable& active() { return *active_slot().load(std::memory_order_acquire); }

bool select(std::string_view name) {
  const KernelTable* t = lookup(name);
  if (!t) return false;
  active_slot().store(t, std::memory_order_release);
  return true;
}

}  // namespace fockbench::kernels
