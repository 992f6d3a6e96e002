#pragma once

// Hilbert class polynomials H_D(x) in Z[x] from floating point evaluation of
// j at the CM points of the reduced forms, and exact discriminants.

#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "hcpf/bigfloat.hpp"
#include "hcpf/ntcore.hpp"
#include "hcpf/quadforms.hpp"

namespace hcpf {

/// Dense polynomial over Z, coefficients in ascending order.
struct IntPoly
{
    std::vector<mpz_class> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    bool is_monic() const { return !coeffs.empty() && coeffs.back() == 1; }
    mpz_class const & operator[](size_t i) const { return coeffs[i]; }

    /// "x^2 + 191025*x - 121287375"
    std::string to_string() const;

    friend bool operator==(IntPoly const & a, IntPoly const & b) { return a.coeffs == b.coeffs; }
};

struct PrecisionBudget
{
    long bits = 64;
    int attempt = 0;
};

/// ceil(pi sqrt|D| / ln 2 * sum 1/a) + 32 + h guard bits.
long precision_bound(i64 D);

/// j((-b + i sqrt|D|) / 2a) with absolute error below 2^(-bits/2).
BigComplex j_at(QuadForm const & form, i64 D, long bits);

struct HilbertResult
{
    IntPoly poly;
    PrecisionBudget budget;  // precision of the accepted (second) evaluation
};

HilbertResult hilbert_class_polynomial_detailed(i64 D);
IntPoly hilbert_class_polynomial(i64 D);

/// Resultant over Z by the subresultant pseudo-remainder sequence.
mpz_class resultant(IntPoly const & a, IntPoly const & b);

/// Exact discriminant (-1)^(n(n-1)/2) Res(H, H') / lc(H).
mpz_class poly_discriminant(IntPoly const & H);

/// i_p = v_p(n_D) = v_p(disc H_D) / 2 for p not dividing D.
int ip(i64 D, i64 p);
int ip_from_discriminant(mpz_class const & disc, i64 D, i64 p);

/// H_D cache: one record per line, "D<TAB>h<TAB>c_0,...,c_{h-1}" with the
/// monic leading coefficient implied. Readers may run concurrently; writes
/// are serialized.
class HcpCache
{
  public:
    HcpCache() = default;
    explicit HcpCache(std::filesystem::path path);

    static std::string format_record(i64 D, IntPoly const & H);
    /// Throws CacheCorrupt when the line does not re-serialize to itself.
    static std::pair<i64, IntPoly> parse_record(std::string const & line);

    /// Loads an existing file (missing file = empty cache).
    void load();
    void save() const;

    std::optional<IntPoly> find(i64 D) const;
    void insert(i64 D, IntPoly const & H);

    /// Cached value, or compute and remember it.
    IntPoly get(i64 D);

    std::filesystem::path const & path() const { return path_; }
    size_t size() const;

  private:
    std::filesystem::path path_;
    mutable std::shared_mutex mutex_;
    std::map<i64, IntPoly> entries_;
};

} // namespace hcpf
