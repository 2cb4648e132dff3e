// Copyright (c) 2026 The nof1 Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdlib>
#include <cstring>

#include "nof1/kernels.hpp"

namespace nof1::kernels {

#ifdef NOF1_WITH_AVX2
const Ops* avx2_ops_table();
#endif

const Ops* avx2_ops() {
#ifdef NOF1_WITH_AVX2
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
    return avx2_ops_table();
  }
#endif
  return nullptr;
}

namespace {

const Ops* select() {
  const char* forced = std::getenv("NOF1_KERNELS");
  if (forced != nullptr && std::strcmp(forced, "scalar") == 0) {
    return &scalar_ops();
  }
  if (const Ops* vec = avx2_ops()) return vec;
  return &scalar_ops();
}

}  // namespace

const Ops& ops() {
  static const Ops* active = select();
  return *active;
}

}  // namespace nof1::kernels
