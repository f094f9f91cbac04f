#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "gcdh/linalg.hpp"

namespace gcdh {

enum class GroupKind { torus, su2, un };

/// One of the supported compact groups: a k-torus, SU(2) or U(n).
class GroupSpec {
public:
    static GroupSpec torus(int k);
    static GroupSpec su2();
    static GroupSpec un(int n);
    /// Accepts "torusK", "su2" and "unN" (e.g. "torus2", "un3").
    static GroupSpec parse(std::string_view name);

    GroupKind kind() const { return kind_; }
    /// k for torus(k), n for un(n), 2 for su2.
    int parameter() const { return param_; }

    int rank() const;
    int u() const;
    int b() const { return rank() + u(); }
    int dim() const;
    std::string name() const;

    bool operator==(const GroupSpec&) const = default;

private:
    GroupSpec(GroupKind kind, int param) : kind_(kind), param_(param) {}
    GroupKind kind_;
    int param_;
};

struct Dims {
    int rank;
    int u;
    int b;
};

Dims dims(const GroupSpec& group);

/// A point of g*. Tori use coordinate vectors, su2 uses R^3 (orbits are
/// centered spheres), U(n) uses Hermitian matrices.
class LiePoint {
public:
    static LiePoint torus(std::vector<double> coords);
    static LiePoint su2(double x, double y, double z);
    static LiePoint un(HermitianMatrix h);

    const GroupSpec& group() const { return group_; }
    bool is_matrix() const { return std::holds_alternative<HermitianMatrix>(payload_); }
    /// Coordinates for torus and su2 points; throws for U(n).
    const std::vector<double>& vector() const;
    /// Matrix for U(n) points; throws otherwise.
    const HermitianMatrix& matrix() const;

    /// Euclidean norm (Frobenius norm for matrices).
    double norm() const;

    LiePoint& operator+=(const LiePoint& other);
    friend LiePoint operator+(LiePoint a, const LiePoint& b) { return a += b; }

private:
    LiePoint(GroupSpec group, std::variant<std::vector<double>, HermitianMatrix> payload)
        : group_(group), payload_(std::move(payload))
    {
    }
    GroupSpec group_;
    std::variant<std::vector<double>, HermitianMatrix> payload_;
};

/// Element of the closed positive Weyl chamber.
struct ChamberPoint {
    GroupSpec group;
    std::vector<double> coords;

    /// Validates length and chamber condition (su2: coords[0] >= 0; un: descending).
    static ChamberPoint make(const GroupSpec& group, std::vector<double> coords);
    bool is_regular() const;
};

/// Value of the big Gelfand-Cetlin map: G-invariant part first, then the rest.
struct GCVector {
    std::vector<double> small;
    std::vector<double> interior;

    std::vector<double> concat() const;
};

/// Affine constraint a . x <= bound on the interior GC coordinates.
struct AffineConstraint {
    std::vector<double> a;
    double bound;
};

/// Image of a coadjoint orbit under the interior GC coordinates.
struct GCPolytope {
    GroupSpec group;
    ChamberPoint base;
    int dimension = 0;
    std::vector<AffineConstraint> constraints;

    bool contains(std::span<const double> x, double tol = 0.0) const;
    /// True when every corner of the box [lo, hi] satisfies all constraints.
    bool contains_box(std::span<const double> lo, std::span<const double> hi) const;
    /// Tight coordinate-wise bounds.
    std::vector<std::pair<double, double>> bounding_box() const;
};

ChamberPoint sweep(const LiePoint& xi);
/// Inverse direction for chamber points: diag(c), (0, 0, r) or the coordinates.
LiePoint embed(const ChamberPoint& c);

GCVector gc_map(const LiePoint& xi);
/// Splits the U(n) interlacing pattern (or su2 pair) into rows, top row first.
std::vector<std::vector<double>> gc_rows(const GroupSpec& group, const GCVector& v);

/// Strongly regular locus: strict interlacing everywhere (relative slack 1e-12).
bool is_sreg(const LiePoint& xi);

double orbit_volume(const GroupSpec& group, const ChamberPoint& c);

GCPolytope gc_polytope(const GroupSpec& group, const ChamberPoint& c);
/// Euclidean volume by iterated Gauss-Legendre integration over the rows of
/// the pattern; exact up to rounding because each slice volume is polynomial.
double gc_polytope_volume(const GCPolytope& p);

/// Random rotation (su2) or Haar conjugation (un) of xi; identity on tori.
LiePoint haar_conjugate(const LiePoint& xi, RandomStream& rng);
/// Moves xi along its GC fiber: rotation about the x3 axis (su2) or
/// conjugation by a diagonal unitary (un). gc_map is unchanged.
LiePoint fiber_partner(const LiePoint& xi, RandomStream& rng);
/// A standard Gaussian point of g*.
LiePoint random_lie_point(const GroupSpec& group, RandomStream& rng);

/// Deterministic strongly regular point over a regular chamber point.
/// su2: t (sqrt(1 - a^2), 0, a) with a = axial_fraction; un: fixed conjugate of diag(c).
LiePoint lift_chamber_point(const ChamberPoint& c, double axial_fraction = 0.3);
/// GC value over c whose interior rows interpolate their parent rows with weight s in (0, 1).
GCVector interior_gc_point(const ChamberPoint& c, double s);

struct ConditionResult {
    std::string id;
    std::string description;
    bool pass = false;
    double worst = 0.0;
    std::size_t checked = 0;
};

struct StrongDatumReport {
    GroupSpec group;
    std::uint64_t seed = 0;
    std::size_t n_samples = 0;
    std::vector<ConditionResult> conditions;

    bool all_pass() const;
};

/// Executes the strong-datum conditions (vi)-(ix) on random samples.
StrongDatumReport check_strong_datum(const GroupSpec& group, std::uint64_t seed, std::size_t n_samples);

} // namespace gcdh
