#pragma once

#include "kendall3d/kernels.hpp"

namespace kendall3d::kernels::detail {

const KernelTable& scalar_table() noexcept;
#if defined(KENDALL3D_HAVE_AVX2)
const KernelTable& avx2_table() noexcept;
#endif

}  // namespace kendall3d::kernels::detail
