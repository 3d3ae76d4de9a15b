#ifndef TRIGINV_ROOTDATA_HPP
#define TRIGINV_ROOTDATA_HPP

#include "triginv/param_scalar.hpp"
#include "triginv/rational.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace triginv {

inline constexpr int kMaxRank = 8;

/// Vector of exact rationals in the ambient coordinates of a chart.
class CoordVector {
public:
    CoordVector() = default;
    explicit CoordVector(std::vector<Rational> entries) : entries_(std::move(entries)) {}
    CoordVector(std::initializer_list<Rational> entries) : entries_(entries) {}

    static CoordVector zero(std::size_t n) { return CoordVector(std::vector<Rational>(n)); }
    static CoordVector unit(std::size_t n, std::size_t i);

    std::size_t size() const { return entries_.size(); }
    const Rational& operator[](std::size_t i) const { return entries_[i]; }
    Rational& operator[](std::size_t i) { return entries_[i]; }
    const std::vector<Rational>& entries() const { return entries_; }

    bool is_zero() const;

    CoordVector& operator+=(const CoordVector& o);
    CoordVector& operator-=(const CoordVector& o);
    CoordVector operator-() const;
    CoordVector scaled(const Rational& q) const;

    bool operator==(const CoordVector& o) const { return entries_ == o.entries_; }
    bool operator!=(const CoordVector& o) const { return !(*this == o); }
    /// Lexicographic on entries; the canonical serialization order.
    bool operator<(const CoordVector& o) const;

    std::string to_string() const;

private:
    std::vector<Rational> entries_;
};

inline CoordVector operator+(CoordVector a, const CoordVector& b) { return a += b; }
inline CoordVector operator-(CoordVector a, const CoordVector& b) { return a -= b; }

struct CoordVectorHash {
    std::size_t operator()(const CoordVector& v) const;
};

/// A weight-lattice element stored by its fundamental-weight coordinates
/// (pairings with the simple coroots). Unused trailing slots are zero.
struct Weight {
    std::array<std::int32_t, kMaxRank> m{};

    std::int32_t operator[](std::size_t i) const { return m[i]; }
    std::int32_t& operator[](std::size_t i) { return m[i]; }

    Weight& operator+=(const Weight& o)
    {
        for (int i = 0; i < kMaxRank; ++i)
            m[i] += o.m[i];
        return *this;
    }
    Weight& operator-=(const Weight& o)
    {
        for (int i = 0; i < kMaxRank; ++i)
            m[i] -= o.m[i];
        return *this;
    }
    Weight operator-() const
    {
        Weight r;
        for (int i = 0; i < kMaxRank; ++i)
            r.m[i] = -m[i];
        return r;
    }
    bool is_zero() const
    {
        for (auto v : m)
            if (v != 0)
                return false;
        return true;
    }
    bool operator==(const Weight& o) const { return m == o.m; }
    bool operator!=(const Weight& o) const { return m != o.m; }
    bool operator<(const Weight& o) const { return m < o.m; }
};

inline Weight operator+(Weight a, const Weight& b) { return a += b; }
inline Weight operator-(Weight a, const Weight& b) { return a -= b; }

struct WeightHash {
    std::size_t operator()(const Weight& w) const noexcept
    {
        std::uint64_t h = 1469598103934665603ULL;
        for (auto v : w.m) {
            h ^= static_cast<std::uint32_t>(v);
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h ^ (h >> 29));
    }
};

enum class ModelFamily { A, B, C, D, BC, G2, F4, E6 };

struct ModelId {
    ModelFamily family = ModelFamily::A;
    int rank = 1;

    /// "A3", "BC2", "G2", "F4", "E6", ...
    std::string name() const;
    /// Throws ConfigurationError for unknown families or out-of-range ranks.
    static ModelId parse(std::string_view text);

    bool operator==(const ModelId& o) const { return family == o.family && rank == o.rank; }
};

struct RootEntry {
    CoordVector vector;
    std::string length_class;
    Weight weight;      // fundamental-weight coordinates
    Weight coroot;      // <w, root^vee> = sum_i w[i] * coroot[i]
    Rational norm2;
};

/// A root system in explicit model coordinates, together with the coupling
/// bookkeeping of its trigonometric Hamiltonian.
///
/// All dot products use `form()`, the coefficient matrix of the kinetic
/// operator; weights are linear forms on the model coordinates.
class ModelChart {
public:
    const ModelId& id() const { return id_; }
    std::string name() const { return id_.name(); }
    int rank() const { return rank_; }
    int ambient_dim() const { return ambient_dim_; }
    const RationalMatrix& form() const { return form_; }
    const std::vector<CoordVector>& simple_roots() const { return simple_roots_; }
    const std::vector<RootEntry>& positive_roots() const { return positive_roots_; }
    const std::vector<CoordVector>& fundamental_seeds() const { return seeds_; }
    /// length class -> ground-state exponent symbol
    const std::map<std::string, Param>& coupling_classes() const { return coupling_; }
    /// Symbols fixed to zero for this model (B, C, D specializations of BC).
    const std::vector<Param>& pinned_symbols() const { return pinned_; }
    /// Factor c in h = c * Psi0^{-1} (H - E0) Psi0 (beta = 1).
    const Rational& scale_convention() const { return scale_; }
    const std::vector<int>& char_vector() const { return char_vector_; }
    /// Exponent symbols actually present (coupling symbols minus pinned ones).
    std::vector<Param> active_symbols() const;

    Rational dot(const CoordVector& a, const CoordVector& b) const;

    /// Throws ArgumentError unless v lies in the weight lattice of the chart.
    Weight to_weight(const CoordVector& v) const;
    CoordVector to_coord(const Weight& w) const;

    /// Bilinear form on weights, as numerator over `pair_denominator()`.
    std::int64_t pair_scaled(const Weight& a, const Weight& b) const;
    std::int64_t pair_denominator() const { return gram_den_; }
    Rational pair(const Weight& a, const Weight& b) const;

    int cartan(std::size_t i, std::size_t j) const { return cartan_[i][j]; }
    const Weight& simple_root_weight(std::size_t i) const { return simple_weights_[i]; }
    Weight fundamental_weight(std::size_t i) const;

    Weight simple_reflect(std::size_t i, const Weight& w) const;
    int coroot_pairing(std::size_t root_index, const Weight& w) const;
    Weight reflect_by_root(std::size_t root_index, const Weight& w) const;
    bool is_dominant(const Weight& w) const;

    /// Integer-scaled ambient coordinates; lexicographic order on these keys
    /// equals lexicographic order on the rational coordinates.
    std::vector<std::int64_t> ambient_key(const Weight& w) const;
    bool ambient_less(const Weight& a, const Weight& b) const;
    /// Integer-scaled simple-root coordinates; (sum, lex) refines dominance.
    std::vector<std::int64_t> root_coordinates_scaled(const Weight& w) const;
    /// (height, lex) order on simple-root coordinates.
    bool dominance_order_less(const Weight& a, const Weight& b) const;

    /// Canonically ordered orbit of a fundamental seed (0-based index), cached.
    const std::vector<Weight>& fundamental_orbit(std::size_t a) const;
    /// |W . w| for a dominant weight, cached by stabilizer type.
    std::int64_t orbit_size_dominant(const Weight& dominant) const;

    /// Used by the CLI disk cache to seed the in-memory orbit cache.
    void install_fundamental_orbit(std::size_t a, std::vector<Weight> orbit) const;

private:
    friend std::shared_ptr<const ModelChart> build_chart(const ModelId& id);
    void finalize();

    ModelId id_;
    int rank_ = 0;
    int ambient_dim_ = 0;
    RationalMatrix form_;
    std::vector<CoordVector> simple_roots_;
    std::vector<RootEntry> positive_roots_;
    std::vector<CoordVector> seeds_;
    std::map<std::string, Param> coupling_;
    std::vector<Param> pinned_;
    Rational scale_;
    std::vector<int> char_vector_;

    // derived
    std::vector<std::vector<int>> cartan_;
    std::vector<Weight> simple_weights_;
    std::vector<std::vector<std::int64_t>> gram_num_;
    std::int64_t gram_den_ = 1;
    std::vector<std::vector<std::int64_t>> seed_int_;   // seeds * ambient_den_
    std::int64_t ambient_den_ = 1;
    std::vector<std::vector<std::int64_t>> cartan_inv_int_;  // C^{-1} * height_den_
    std::int64_t height_den_ = 1;
    std::vector<Rational> simple_norm2_;

    mutable std::mutex cache_mutex_;
    mutable std::map<std::size_t, std::shared_ptr<const std::vector<Weight>>> orbit_cache_;
    mutable std::map<std::uint32_t, std::int64_t> stabilizer_cache_;
};

using ChartPtr = std::shared_ptr<const ModelChart>;

/// Build (and memoize) the chart for a model.
ChartPtr build_chart(const ModelId& id);
inline ChartPtr build_chart(std::string_view name) { return build_chart(ModelId::parse(name)); }

/// v - 2 (v.a)/(a.a) a in the chart form.
CoordVector reflect(const ModelChart& chart, const CoordVector& root, const CoordVector& v);

/// Orbit of `weight` under the Weyl group, canonically (lexicographically) ordered.
std::vector<CoordVector> weyl_orbit(const ModelChart& chart, const CoordVector& weight);
std::vector<Weight> weyl_orbit_weights(const ModelChart& chart, const Weight& weight);
/// Serial reference for the breadth-first closure.
std::vector<Weight> weyl_orbit_weights_serial(const ModelChart& chart, const Weight& weight);

CoordVector dominant_representative(const ModelChart& chart, const CoordVector& weight);
Weight dominant_representative(const ModelChart& chart, const Weight& weight);

std::int64_t weyl_group_order(const ModelChart& chart);

struct GroundStateFactor {
    std::size_t root_index;
    Param exponent;
};

struct GroundStateSpec {
    std::vector<GroundStateFactor> factors;
    ParamScalar e0;
};

/// Ground-state factors for every positive root; `e0` left empty.
GroundStateSpec ground_state_spec(const ModelChart& chart);

/// Exponent symbol of a positive root, or nullopt if the symbol is pinned to zero.
std::optional<Param> root_exponent(const ModelChart& chart, std::size_t root_index);

/// rho = sum over positive roots of mu_|alpha| alpha (ambient coordinates).
std::vector<ParamScalar> deformed_weyl_vector(const ModelChart& chart);

} // namespace triginv

#endif
