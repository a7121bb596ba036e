#pragma once

#include <vector>

#include "sector_heat/domain.hpp"
#include "sector_heat/profile.hpp"
#include "sector_heat/trajectory.hpp"

namespace sector_heat {

struct XNormReport {
    double norm = 0.0;
    std::vector<double> argmax;
    /// Largest weighted value on the outermost grid shell (Field), 0 for closed forms.
    double tail_bound = 0.0;
    /// AntisymConstant: norm is infinite, the profile is bounded only.
    bool bounded_only = false;
};

/// Grid supremum of weight * |f| over the nodes of the open sector.
XNormReport xnorm(const Field& f, const DomainSpec& spec);
/// Closed form per variant; Psi0 gives exactly scale * c_{m,gamma}.
XNormReport xnorm(const ProfileSpec& p, const DomainSpec& spec);

/// D_lambda^sigma p in closed form. Log-periodic phases are reduced mod 2 pi.
ProfileSpec dilate(const ProfileSpec& p, double lambda, double sigma, const DomainSpec& spec);
/// D_lambda^sigma f resampled on f's grid. Nodes mapped outside the grid get 0;
/// throws DomainError when every node maps outside.
Field dilate(const Field& f, double lambda, double sigma);

/// Gamma_lambda^sigma u at time t: lambda^sigma u(lambda^2 t, lambda x).
Field spacetime_rescale(const Trajectory& traj, double lambda, double sigma, double t);

/// lambda^sigma * u(t_src, lambda x) sampled on `target` (nullopt outside the source grid
/// is an error). Used for comparisons on windows.
Field resample_dilated(const Field& src, const GridPtr& target, double lambda, double sigma,
                       double time);

}  // namespace sector_heat
