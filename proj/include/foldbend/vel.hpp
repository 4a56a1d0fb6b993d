#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "foldbend/bending.hpp"

namespace foldbend {

/// Per-fold constraint pattern, proximal fold first. true = free to bend,
/// false = held straight by the tendon.
class SegmentMask {
public:
    SegmentMask() = default;
    explicit SegmentMask(std::vector<bool> active) : active_(std::move(active)) {}

    /// Parses "0011..." notation. Throws ValidationError on any other character
    /// or an empty string.
    static SegmentMask parse(std::string_view bits);
    static SegmentMask all_active(std::size_t n) { return SegmentMask(std::vector<bool>(n, true)); }
    static SegmentMask all_constrained(std::size_t n) { return SegmentMask(std::vector<bool>(n, false)); }
    /// Bit k of `bits` is fold k (so fold 0, the proximal one, is the lowest bit).
    static SegmentMask from_bits(unsigned long bits, std::size_t n);

    std::size_t size() const noexcept { return active_.size(); }
    bool active(std::size_t fold) const { return active_.at(fold); }
    std::size_t active_count() const noexcept;
    std::size_t constrained_count() const noexcept { return size() - active_count(); }
    std::string to_string() const;

    friend bool operator==(const SegmentMask&, const SegmentMask&) = default;

private:
    std::vector<bool> active_;
};

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

struct Pose2 {
    double x = 0.0;
    double y = 0.0;
    double heading = 0.0;  // rad, measured from +x, counter-clockwise positive
};

/// Planar backbone made of one constant-curvature piece per fold.
struct BackboneShape {
    std::vector<Pose2> vertices;      // n + 1 fold boundaries, base first
    std::vector<double> segment_turn; // heading change across each fold: 0 or phi
    double segment_pitch = 0.0;       // arc length of each fold, mm

    double arc_length() const { return segment_pitch * static_cast<double>(segment_turn.size()); }
    /// Pose at arc length s from the base, following the arcs exactly.
    Pose2 pose_at(double s) const;
};

struct ContourProfile {
    std::vector<Point2> points;
};

/// At least two points, finite, consecutive points distinct.
void validate(const ContourProfile& contour);

struct ConformityScore {
    double contact_ratio = 0.0;  // fraction of stations within epsilon of the contour
    double rms_distance = 0.0;   // mm
};

inline constexpr int kDefaultStations = 200;
inline constexpr double kDefaultEpsilonMm = 2.0;
inline constexpr std::size_t kMaxExhaustiveFolds = 24;

/// Chains the folds from a base at the origin heading along +x. Active folds
/// turn by phi over one pitch; constrained folds are straight.
BackboneShape backbone_shape(double phi, const SegmentMask& mask, double pitch);

/// Same, with phi taken from the equilibrium state and the mask checked
/// against n_folds.
BackboneShape backbone_shape(const ActuatorConfig& config, const BendingState& state,
                             const SegmentMask& mask, double pitch);

/// `stations` points uniformly spaced in arc length, base and tip included.
std::vector<Point2> sample_backbone(const BackboneShape& shape, int stations = kDefaultStations);

/// Contour that traces the backbone through its sample stations.
ContourProfile contour_from_shape(const BackboneShape& shape, int stations = kDefaultStations);

/// Distance from a point to the contour polyline.
double distance_to_contour(const Point2& p, const ContourProfile& contour);

/// Samples the backbone, moves its base onto the first contour point and turns
/// its first sample chord onto the first contour segment, then measures each
/// station against the contour polyline.
ConformityScore conformity_score(const BackboneShape& shape, const ContourProfile& contour,
                                 double epsilon, int stations = kDefaultStations);

struct MaskCandidate {
    SegmentMask mask;
    ConformityScore score;
};

/// Total order used by the optimizer: higher contact ratio, then lower RMS
/// distance, then fewer constrained folds, then the lexicographically smaller
/// mask string.
bool ranks_before(const MaskCandidate& a, const MaskCandidate& b);

struct MaskOptimum {
    SegmentMask mask;
    ConformityScore score;
    std::size_t evaluated = 0;
};

/// Scores all 2^n masks and returns the best under ranks_before.
/// Throws SizeError for n_folds above kMaxExhaustiveFolds.
MaskOptimum optimize_mask(const ActuatorConfig& config, const BendingState& state,
                          const ContourProfile& contour, double pitch, double epsilon,
                          int stations = kDefaultStations);

}  // namespace foldbend
