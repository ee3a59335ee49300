#pragma once

#include "rolemine/role_model.hpp"

#include <Eigen/Core>

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace rolemine {

/// Role id of a quarter with no recorded activity.
inline constexpr int kAbsentRole = -1;

struct RoleTrajectory {
    std::string owner;
    std::string name;
    std::string login;
    std::vector<int> roles; // length T, kAbsentRole where no data point exists
};

enum class Population { RareOnly, SupportingOnly, EverActive };

const char* to_string(Population p);

struct PopulationTag {
    Population population = Population::RareOnly;
    /// Same non-Absent role in every one of the T periods; such
    /// trajectories are excluded from the dynamics analysis.
    bool excluded_constant = false;
};

/// One trajectory per (contributor, project) with at least one data
/// point; quarters without a row hold the Absent role. Sorted by
/// (owner, name, login).
std::vector<RoleTrajectory> build_trajectories(const RoleModel& model, int periods);

PopulationTag tag_population(const RoleTrajectory& trajectory,
                             const RoleModel& model,
                             const std::set<int>& rare_role_ids);

struct TransitionMatrix {
    Population population = Population::SupportingOnly;
    /// (r+1) x (r+1) counts; index r is the Absent role. Entry (i, j)
    /// counts consecutive-period moves from role i to role j,
    /// self-transitions included.
    Eigen::MatrixXi counts;
    std::vector<std::string> labels; // role labels + "Absent"
};

/// Counts consecutive-period transitions across the given trajectories.
/// Callers pass only the population slice they care about; RareOnly and
/// excluded-constant trajectories are conventionally left out upstream.
TransitionMatrix transition_matrix(const std::vector<RoleTrajectory>& trajectories,
                                   Population population, const RoleModel& model);

/// Role Change Intensity: log10 of the accumulated Euclidean distance
/// between the centroids of consecutively assumed roles. Absent takes
/// the zero vector as its centroid unless skip_absent_terms is set, in
/// which case Absent-adjacent terms contribute nothing. Trajectories
/// whose accumulated distance is zero carry no score.
std::optional<double> rci(const RoleTrajectory& trajectory, const RoleModel& model,
                          bool skip_absent_terms = false);

struct RciSummary {
    double median = 0;
    double q1 = 0;
    double q3 = 0;
    int count = 0;
    struct Bin {
        double lo = 0;
        double hi = 0;
        int count = 0;
    };
    std::vector<Bin> bins;
};

/// Median and linearly interpolated quartiles plus a fixed-width
/// histogram over the observed range. Throws EmptyPopulationError when
/// no scores are present.
RciSummary rci_summary(std::vector<double> scores, int histogram_bins = 20);

/// Linear-interpolation quantile of sorted data, q in [0, 1].
double interpolated_quantile(const std::vector<double>& sorted, double q);

} // namespace rolemine
