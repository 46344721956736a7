#pragma once

#include "ionfield/simd.hpp"

namespace ionfield::simd::detail {

#if defined(IONFIELD_HAVE_AVX2)
const KernelSet& avx2_kernels() noexcept;
#endif

}  // namespace ionfield::simd::detail
