#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "gcdh/liegc.hpp"

namespace gcdh {

/// A model Hamiltonian G-space.
///
/// Points are flat real vectors of fixed length. The sampler draws from the
/// normalized Liouville probability (importance-weighted for noncompact
/// models); `weight_scale` converts weighted sample fractions back into
/// Liouville mass. For compact models weights are identically 1 and
/// weight_scale == mass.
class SpaceModel {
public:
    /// Fills `point` from the stream and returns the sample weight.
    using Drawer = std::function<double(RandomStream&, std::span<double> point)>;
    using Moment = std::function<LiePoint(std::span<const double> point)>;

    SpaceModel(std::string name, GroupSpec group, int half_dim, double mass, double weight_scale,
               std::size_t point_size, Drawer drawer, Moment moment);

    const std::string& name() const { return name_; }
    const GroupSpec& group() const { return group_; }
    int half_dim() const { return half_dim_; }
    /// Total Liouville mass in normalized units; +inf for noncompact models.
    double mass() const { return mass_; }
    bool is_compact() const { return std::isfinite(mass_); }
    double weight_scale() const { return weight_scale_; }
    std::size_t point_size() const { return point_size_; }

    /// Draws the sample addressed by (seed, index).
    double sample(std::uint64_t seed, std::uint64_t index, std::span<double> point) const;
    /// Draws the next sample from an existing stream.
    double draw(RandomStream& rng, std::span<double> point) const { return drawer_(rng, point); }
    LiePoint moment(std::span<const double> point) const { return moment_(point); }

private:
    std::string name_;
    GroupSpec group_;
    int half_dim_;
    double mass_;
    double weight_scale_;
    std::size_t point_size_;
    Drawer drawer_;
    Moment moment_;
};

/// Coadjoint orbit through the regular chamber point c with its invariant probability.
SpaceModel orbit_space(const GroupSpec& group, const ChamberPoint& c);
/// Diagonal action on a product; moments add, masses multiply.
SpaceModel product_space(const std::vector<SpaceModel>& factors);
/// CP^n with the standard T^n action; moment image is the unit simplex.
SpaceModel cpn_space(int n);
/// (C^n)^k with U(n) acting diagonally, moment (1/2) sum_j z_j z_j^*.
/// Liouville measure is Lebesgue / (2 pi)^{nk}, realized with Gaussian
/// proposals and weights exp(sum |z|^2 / 2).
SpaceModel wishart_space(int n, int k);

} // namespace gcdh
