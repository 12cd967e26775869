#include <cstdlib>
#include <stdexcept>
#include <string>

#include "stochbeer/simd/kernels.hpp"

namespace stochbeer::simd
{
namespace
{
constexpr KernelTable scalar_table{
    Isa::scalar, &scalar::dot, &scalar::welford_update};

#if STOCHBEER_WITH_AVX2
constexpr KernelTable avx2_table{
    Isa::avx2, &avx2::dot, &avx2::welford_update};
#endif
}  // namespace

std::string_view to_string(Isa isa)
{
    switch (isa)
    {
        case Isa::scalar:
            return "scalar";
        case Isa::avx2:
            return "avx2";
    }
    return "unknown";
}

bool supported(Isa isa)
{
    switch (isa)
    {
        case Isa::scalar:
            return true;
        case Isa::avx2:
#if STOCHBEER_WITH_AVX2 && (defined(__GNUC__) || defined(__clang__))
            return __builtin_cpu_supports("avx2")
                   && __builtin_cpu_supports("fma");
#else
            return false;
#endif
    }
    return false;
}

Isa detect()
{
    if (char const* env = std::getenv("STOCHBEER_SIMD"))
    {
        std::string const want{env};
        if (want == "scalar")
            return Isa::scalar;
        if (want == "avx2" && supported(Isa::avx2))
            return Isa::avx2;
    }
    if (supported(Isa::avx2))
        return Isa::avx2;
    return Isa::scalar;
}

KernelTable const& kernels(Isa isa)
{
    if (!supported(isa))
    {
        throw std::runtime_error("SIMD kernel set '"
                                 + std::string(to_string(isa))
                                 + "' is not supported on this CPU");
    }
#if STOCHBEER_WITH_AVX2
    if (isa == Isa::avx2)
        return avx2_table;
#endif
    return scalar_table;
}

KernelTable const& active()
{
    static KernelTable const& table = kernels(detect());
    return table;
}

std::vector<Isa> available()
{
    std::vector<Isa> result{Isa::scalar};
    if (supported(Isa::avx2))
        result.push_back(Isa::avx2);
    return result;
}

void lower_matvec(KernelTable const& k,
                  std::span<double const> packed,
                  std::span<double const> x,
                  std::span<double> out)
{
    std::size_t const n = x.size();
    if (out.size() != n || packed.size() != n * (n + 1) / 2)
    {
        throw std::invalid_argument("lower_matvec: size mismatch");
    }
    std::size_t offset = 0;
    for (std::size_t i = 0; i < n; ++i)
    {
        out[i] = k.dot(packed.data() + offset, x.data(), i + 1);
        offset += i + 1;
    }
}

}  // namespace stochbeer::simd
