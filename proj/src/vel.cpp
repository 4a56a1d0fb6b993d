#include "foldbend/vel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "foldbend/errors.hpp"

namespace foldbend {

namespace {

// sin(x)/x, accurate near zero.
double sinc(double x) {
    if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

// Pose after travelling `length` along an arc that turns by `turn` in total
// over `full_length`.
Pose2 advance(const Pose2& start, double length, double turn, double full_length) {
    const double delta = turn * (length / full_length);
    const double chord = length * sinc(0.5 * delta);
    const double dir = start.heading + 0.5 * delta;
    return {start.x + chord * std::cos(dir), start.y + chord * std::sin(dir), start.heading + delta};
}

double point_segment_distance(const Point2& p, const Point2& a, const Point2& b) {
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    double t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
}

void require_stations(int stations) {
    if (stations < 2) throw ValidationError("need at least 2 sample stations", {"stations"});
}

}  // namespace

SegmentMask SegmentMask::parse(std::string_view bits) {
    if (bits.empty()) throw ValidationError("mask string is empty", {"mask"});
    std::vector<bool> active;
    active.reserve(bits.size());
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw ValidationError("mask must contain only '0' and '1', got '" + std::string(bits) + "'",
                                  {"mask"});
        }
        active.push_back(c == '1');
    }
    return SegmentMask(std::move(active));
}

SegmentMask SegmentMask::from_bits(unsigned long bits, std::size_t n) {
    std::vector<bool> active(n);
    for (std::size_t k = 0; k < n; ++k) active[k] = ((bits >> k) & 1UL) != 0;
    return SegmentMask(std::move(active));
}

std::size_t SegmentMask::active_count() const noexcept {
    return static_cast<std::size_t>(std::count(active_.begin(), active_.end(), true));
}

std::string SegmentMask::to_string() const {
    std::string s;
    s.reserve(active_.size());
    for (bool a : active_) s.push_back(a ? '1' : '0');
    return s;
}

Pose2 BackboneShape::pose_at(double s) const {
    const std::size_t n = segment_turn.size();
    if (n == 0) return vertices.empty() ? Pose2{} : vertices.front();
    s = std::clamp(s, 0.0, arc_length());
    auto k = static_cast<std::size_t>(s / segment_pitch);
    if (k >= n) k = n - 1;
    const double u = s - static_cast<double>(k) * segment_pitch;
    return advance(vertices[k], u, segment_turn[k], segment_pitch);
}

void validate(const ContourProfile& contour) {
    if (contour.points.size() < 2) {
        throw ValidationError("contour needs at least 2 points", {"contour"});
    }
    for (std::size_t k = 0; k < contour.points.size(); ++k) {
        const auto& p = contour.points[k];
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
            throw ValidationError("contour point " + std::to_string(k) + " is not finite", {"contour"});
        }
        if (k > 0 && p.x == contour.points[k - 1].x && p.y == contour.points[k - 1].y) {
            throw ValidationError("contour points " + std::to_string(k - 1) + " and " +
                                      std::to_string(k) + " coincide",
                                  {"contour"});
        }
    }
}

BackboneShape backbone_shape(double phi, const SegmentMask& mask, double pitch) {
    if (!std::isfinite(pitch) || pitch <= 0.0) throw ValidationError("pitch must be > 0", {"pitch"});
    if (!std::isfinite(phi)) throw ValidationError("fold angle must be finite", {"phi"});

    BackboneShape shape;
    shape.segment_pitch = pitch;
    shape.vertices.reserve(mask.size() + 1);
    shape.segment_turn.reserve(mask.size());
    shape.vertices.push_back({0.0, 0.0, 0.0});
    std::size_t turned = 0;
    for (std::size_t k = 0; k < mask.size(); ++k) {
        const double turn = mask.active(k) ? phi : 0.0;
        Pose2 next = advance(shape.vertices.back(), pitch, turn, pitch);
        if (mask.active(k)) ++turned;
        // Headings are exact multiples of phi rather than running sums.
        next.heading = static_cast<double>(turned) * phi;
        shape.segment_turn.push_back(turn);
        shape.vertices.push_back(next);
    }
    return shape;
}

BackboneShape backbone_shape(const ActuatorConfig& config, const BendingState& state,
                             const SegmentMask& mask, double pitch) {
    if (mask.size() != static_cast<std::size_t>(config.n_folds)) {
        std::ostringstream msg;
        msg << "mask has " << mask.size() << " folds but the actuator has " << config.n_folds;
        throw ValidationError(msg.str(), {"mask"});
    }
    return backbone_shape(state.phi, mask, pitch);
}

std::vector<Point2> sample_backbone(const BackboneShape& shape, int stations) {
    require_stations(stations);
    const double length = shape.arc_length();
    std::vector<Point2> out;
    out.reserve(static_cast<std::size_t>(stations));
    for (int k = 0; k < stations; ++k) {
        const double s = length * static_cast<double>(k) / static_cast<double>(stations - 1);
        const auto pose = shape.pose_at(s);
        out.push_back({pose.x, pose.y});
    }
    return out;
}

ContourProfile contour_from_shape(const BackboneShape& shape, int stations) {
    return ContourProfile{sample_backbone(shape, stations)};
}

double distance_to_contour(const Point2& p, const ContourProfile& contour) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < contour.points.size(); ++k) {
        best = std::min(best, point_segment_distance(p, contour.points[k - 1], contour.points[k]));
    }
    return best;
}

ConformityScore conformity_score(const BackboneShape& shape, const ContourProfile& contour,
                                 double epsilon, int stations) {
    if (!std::isfinite(epsilon) || epsilon <= 0.0) {
        throw ValidationError("epsilon must be > 0 mm", {"epsilon"});
    }
    validate(contour);
    auto samples = sample_backbone(shape, stations);

    const Point2 base = samples[0];
    const double shape_dir = std::atan2(samples[1].y - base.y, samples[1].x - base.x);
    const auto& c0 = contour.points[0];
    const auto& c1 = contour.points[1];
    const double contour_dir = std::atan2(c1.y - c0.y, c1.x - c0.x);
    const double rot = contour_dir - shape_dir;
    const double cr = std::cos(rot);
    const double sr = std::sin(rot);

    std::size_t hits = 0;
    double sum_sq = 0.0;
    for (const auto& p : samples) {
        const double dx = p.x - base.x;
        const double dy = p.y - base.y;
        const Point2 q{c0.x + cr * dx - sr * dy, c0.y + sr * dx + cr * dy};
        const double d = distance_to_contour(q, contour);
        if (d <= epsilon) ++hits;
        sum_sq += d * d;
    }
    const auto n = static_cast<double>(samples.size());
    return {static_cast<double>(hits) / n, std::sqrt(sum_sq / n)};
}

bool ranks_before(const MaskCandidate& a, const MaskCandidate& b) {
    if (a.score.contact_ratio != b.score.contact_ratio) {
        return a.score.contact_ratio > b.score.contact_ratio;
    }
    if (a.score.rms_distance != b.score.rms_distance) {
        return a.score.rms_distance < b.score.rms_distance;
    }
    if (a.mask.constrained_count() != b.mask.constrained_count()) {
        return a.mask.constrained_count() < b.mask.constrained_count();
    }
    return a.mask.to_string() < b.mask.to_string();
}

MaskOptimum optimize_mask(const ActuatorConfig& config, const BendingState& state,
                          const ContourProfile& contour, double pitch, double epsilon, int stations) {
    const auto n = static_cast<std::size_t>(config.n_folds);
    if (n > kMaxExhaustiveFolds) {
        std::ostringstream msg;
        msg << "exhaustive mask search is limited to " << kMaxExhaustiveFolds << " folds (got " << n
            << "); score candidate masks individually instead";
        throw SizeError(msg.str());
    }
    if (!std::isfinite(epsilon) || epsilon <= 0.0) {
        throw ValidationError("epsilon must be > 0 mm", {"epsilon"});
    }
    validate(contour);

    MaskOptimum best;
    bool have = false;
    const unsigned long count = 1UL << n;
    for (unsigned long bits = 0; bits < count; ++bits) {
        MaskCandidate cand{SegmentMask::from_bits(bits, n), {}};
        const auto shape = backbone_shape(config, state, cand.mask, pitch);
        cand.score = conformity_score(shape, contour, epsilon, stations);
        if (!have || ranks_before(cand, {best.mask, best.score})) {
            best.mask = std::move(cand.mask);
            best.score = cand.score;
            have = true;
        }
    }
    best.evaluated = count;
    return best;
}

}  // namespace foldbend
