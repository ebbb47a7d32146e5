#include <cstdlib>
#include <cstring>

#include "subclust/kernels.hpp"

namespace subclust::kernels {
namespace {

constexpr KernelTable kScalar{Isa::scalar, &scalar::dot, &scalar::squared_distance, &scalar::axpy,
                              &scalar::nearest};

#if defined(SUBCLUST_HAVE_AVX2)
constexpr KernelTable kAvx2{Isa::avx2, &avx2::dot, &avx2::squared_distance, &avx2::axpy,
                            &avx2::nearest};
#endif

bool cpu_has_avx2() noexcept {
#if defined(SUBCLUST_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable& select() noexcept {
    const char* env = std::getenv("SUBCLUST_SIMD");
    if (env != nullptr && std::strcmp(env, "scalar") == 0) return kScalar;
#if defined(SUBCLUST_HAVE_AVX2)
    if (cpu_has_avx2()) return kAvx2;
#endif
    return kScalar;
}

}  // namespace

const KernelTable& active() noexcept {
    static const KernelTable& chosen = select();
    return chosen;
}

bool available(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar:
            return true;
        case Isa::avx2:
            return cpu_has_avx2();
    }
    return false;
}

const KernelTable& table(Isa isa) noexcept {
#if defined(SUBCLUST_HAVE_AVX2)
    if (isa == Isa::avx2) return kAvx2;
#endif
    (void)isa;
    return kScalar;
}

std::string_view name(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar:
            return "scalar";
        case Isa::avx2:
            return "avx2";
    }
    return "unknown";
}

}  // namespace subclust::kernels
