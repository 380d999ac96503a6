#ifndef LIESURF_GEOMETRY_HPP
#define LIESURF_GEOMETRY_HPP

// Curves and translation surfaces f(s,t) = a(s) * b(t) in R^n (vector
// addition) and in the unit 3-sphere (quaternion product), with the metric
// angle u, and Gaussian curvature computed intrinsically (K = -u_st / sin u)
// and extrinsically (Gauss equation).

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace liesurf::geom {

using Vec4 = Eigen::Vector4d;

enum class Group { Euclidean, Sphere3 };

/// "s3", or "r<dim>" for the Euclidean group.
std::string group_tag(Group g, int dim);

/// Hamilton product on raw 4-vectors (w, x, y, z).
Vec4 quat_mul(const Vec4& a, const Vec4& b);
Vec4 quat_conj(const Vec4& q);

class UnitQuaternion {
public:
    /// Normalizes; throws PreconditionError on a (near) zero vector.
    UnitQuaternion(double w, double x, double y, double z);
    explicit UnitQuaternion(const Vec4& v);

    static UnitQuaternion identity() { return {1.0, 0.0, 0.0, 0.0}; }

    double w() const noexcept { return q_[0]; }
    double x() const noexcept { return q_[1]; }
    double y() const noexcept { return q_[2]; }
    double z() const noexcept { return q_[3]; }
    const Vec4& vec() const noexcept { return q_; }

    UnitQuaternion conjugate() const { return UnitQuaternion(quat_conj(q_)); }
    friend UnitQuaternion operator*(const UnitQuaternion& a, const UnitQuaternion& b) {
        return UnitQuaternion(quat_mul(a.q_, b.q_));
    }

private:
    Vec4 q_;
};

/// Element of R^n (n <= 4, stored zero-padded) or of S^3.
class GroupPoint {
public:
    static GroupPoint euclidean(const Eigen::VectorXd& v);
    static GroupPoint sphere(const UnitQuaternion& q);
    static GroupPoint identity(Group group, int dim);

    Group group() const noexcept { return group_; }
    int dim() const noexcept { return dim_; }
    const Vec4& coords() const noexcept { return v_; }

    /// Throws PreconditionError if the groups differ.
    GroupPoint operator*(const GroupPoint& other) const;

private:
    GroupPoint(Group group, int dim, Vec4 v) : group_(group), dim_(dim), v_(std::move(v)) {}

    Group group_;
    int dim_;
    Vec4 v_;
};

/// Uniform parameter grid start + k * step, k = 0 .. count-1.
struct ParamGrid {
    double start = 0.0;
    double step = 0.01;
    int count = 0;

    double at(int k) const { return start + step * k; }
    /// Nodes k*step for k = -n..n with n = round(length / (2 step)).
    static ParamGrid centered(double length, double step);
    static ParamGrid centered_nodes(int count, double step);
    ParamGrid shifted(double offset) const { return {start + offset, step, count}; }
    /// Index of the node at parameter 0, if there is one.
    std::optional<int> zero_index() const;
};

struct FrenetFrame {
    Vec4 T;
    Vec4 N;
    Vec4 B;
};

/// Position samples with optional first/second derivative samples. When the
/// derivative samples are empty they are recovered by central differences.
struct SampledCurve {
    Group group = Group::Euclidean;
    int dim = 3;
    ParamGrid grid;
    std::vector<Vec4> position;
    std::vector<Vec4> velocity;
    std::vector<Vec4> acceleration;
    std::vector<FrenetFrame> frames;

    bool has_jets() const { return !velocity.empty() && !acceleration.empty(); }
    /// max |speed - 1| over nodes where the velocity is known.
    double max_speed_deviation() const;
};

struct CurveJet {
    Vec4 position;
    Vec4 velocity;
    Vec4 acceleration;
};

/// Samples an analytically known curve in R^dim.
SampledCurve analytic_curve(int dim, const ParamGrid& grid, const std::function<CurveJet(double)>& jet);

/// Samples only; derivatives will come from central differences.
SampledCurve sampled_curve(Group group, int dim, const ParamGrid& grid, std::vector<Vec4> positions);

/// Unit-speed circle of the given radius in the xy-plane of R^3, through the
/// origin at s = 0.
SampledCurve circle_r3(double radius, const ParamGrid& grid);

/// Unit-speed line through the origin in R^3.
SampledCurve line_r3(const Eigen::Vector3d& direction, const ParamGrid& grid);

/// gamma(s) = cos s + sin s * direction; direction must be a unit quaternion
/// orthogonal to 1.
SampledCurve geodesic_s3(const Vec4& direction, const ParamGrid& grid);
SampledCurve geodesic_s3(const Vec4& direction, double length, double step);

/// T = i, N = j, B = k.
FrenetFrame default_frame_a();
/// T = j, N = -i, B = k: same binormal as default_frame_a, tangent not
/// parallel to it.
FrenetFrame default_frame_b();

/// Spherical Frenet system gamma' = T, T' = -gamma + kappa N, N' = -kappa T + tau B,
/// B' = -tau N, started at gamma(0) = 1 with the given frame, integrated by RK4
/// with Gram-Schmidt re-orthonormalization after every step. The initial frame
/// must be orthonormal, orthogonal to 1 and positively oriented
/// (det[1, T, N, B] = +1).
SampledCurve frenet_curve_s3(const std::function<double(double)>& kappa, double torsion, const ParamGrid& grid,
                             const FrenetFrame& initial = default_frame_a());
SampledCurve frenet_curve_s3(const std::function<double(double)>& kappa, double torsion, double length,
                             double step, const FrenetFrame& initial = default_frame_a());

/// Row-major scalar field over an ns x nt node grid; NaN marks undefined nodes.
struct Grid2 {
    int ns = 0;
    int nt = 0;
    std::vector<double> values;

    Grid2() = default;
    Grid2(int ns_, int nt_);

    double& at(int i, int j) { return values[static_cast<std::size_t>(i * nt + j)]; }
    double at(int i, int j) const { return values[static_cast<std::size_t>(i * nt + j)]; }
    bool interior(int i, int j) const { return i > 0 && j > 0 && i < ns - 1 && j < nt - 1; }
    /// Max |value| over interior nodes where the value is defined.
    double max_abs_interior() const;
    /// Max |value - target| over defined interior nodes.
    double max_deviation_interior(double target) const;
};

struct Node {
    int i;
    int j;
};

struct TranslationSurface {
    Group group = Group::Euclidean;
    int dim = 3;
    ParamGrid grid_s;
    ParamGrid grid_t;
    // jets of f at every node, row-major (i over s, j over t); NaN where a
    // central difference is unavailable
    std::vector<Vec4> f;
    std::vector<Vec4> f_s;
    std::vector<Vec4> f_t;
    std::vector<Vec4> f_ss;
    std::vector<Vec4> f_st;
    std::vector<Vec4> f_tt;
    std::vector<std::string> warnings;

    int ns() const { return grid_s.count; }
    int nt() const { return grid_t.count; }
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(i * grid_t.count + j); }
};

/// f(s,t) = a(s) * b(t). Derivatives come from the curve jets translated by
/// the other factor (f_s = a'(s) b(t), f_t = a(s) b'(t), ...).
TranslationSurface translation_surface(const SampledCurve& a, const SampledCurve& b);

inline constexpr double kRegularityMargin = 1e-6;
inline constexpr double kUnitSpeedTolerance = 1e-6;
inline constexpr double kSinThreshold = 1e-6;
inline constexpr double kMinFirstFormDet = 1e-8;
inline constexpr double kCurvatureThreshold = 1e-6;
inline constexpr double kHyperbolicThreshold = 1e-6;

/// cos u = <f_s, f_t>, 0 < u < pi. Throws PreconditionError naming the first
/// node where |cos u| > 1 - kRegularityMargin or a tangent is not unit length.
Grid2 metric_angle(const TranslationSurface& surf);

struct IntrinsicCurvature {
    Grid2 K;
    std::vector<Node> excluded;  // interior nodes with sin u below threshold
};

/// K = -u_st / sin u with the central mixed difference at interior nodes.
IntrinsicCurvature curvature_intrinsic(const Grid2& u, double step_s, double step_t);

struct FundamentalForms {
    double E = 0, F = 0, G = 0;
    double L = 0, M = 0, N = 0;
    Vec4 normal = Vec4::Zero();
    double det_first() const { return E * G - F * F; }
    double det_second() const { return L * N - M * M; }
};

FundamentalForms fundamental_forms(const TranslationSurface& surf, int i, int j);

struct ExtrinsicCurvature {
    Grid2 K;
    Grid2 gauss_kronecker;  // det II / det I
};

/// R^3: K = det II / det I. S^3: K = 1 + det II / det I (Gauss equation).
ExtrinsicCurvature curvature_extrinsic(const TranslationSurface& surf);

struct CurvatureReport {
    double step_s = 0;
    double step_t = 0;
    Grid2 u;
    Grid2 K_intrinsic;
    Grid2 K_extrinsic;
    Grid2 gauss_kronecker;
    std::vector<Node> excluded;
    double max_abs_K_intrinsic = 0;
    double max_abs_K_extrinsic = 0;
    double max_abs_difference = 0;
};

CurvatureReport curvature_report(const TranslationSurface& surf);

struct CurveInvariants {
    std::vector<double> curvature;              // NaN where undefined
    std::vector<std::optional<double>> torsion;  // empty where undefined
    std::vector<int> torsion_undefined;          // interior nodes with small curvature
};

/// Curvature and torsion measured from the sampled positions/tangents by
/// central differences. For S^3 the covariant derivative is the ambient one
/// projected onto the tangent space of the sphere, and B completes
/// (gamma, T, N, B) to a positively oriented frame.
CurveInvariants curve_invariants(const SampledCurve& c);

struct AsymptoticDirection {
    double ds = 0;  // components in the (f_s, f_t) basis, unit in the induced metric
    double dt = 0;
    Vec4 ambient = Vec4::Zero();
};

/// The two null directions of the second fundamental form at a hyperbolic
/// node. Throws PreconditionError at elliptic or parabolic nodes.
std::array<AsymptoticDirection, 2> asymptotic_directions(const TranslationSurface& surf, int i, int j);

/// Generalized cross product in R^4: <cross4(a,b,c), d> = det[a, b, c, d].
Vec4 cross4(const Vec4& a, const Vec4& b, const Vec4& c);

// ---------------------------------------------------------------------------
// Shell-friendly curve specifications:
//   geodesic:dir=i|j|k
//   frenet:kappa=<expression in s>,tau=<number>
//   line:dir=x|y|z     circle:radius=<number>
struct CurveSpec {
    std::string kind;
    std::string kappa = "1";
    double torsion = 0;
    std::string direction = "i";
    double radius = 1;
};

/// Throws InputError on malformed specs.
CurveSpec parse_curve_spec(const std::string& text);

/// `second` selects the default Frenet frame of the second factor.
SampledCurve build_curve(const CurveSpec& spec, const ParamGrid& grid, bool second);

Group curve_group(const CurveSpec& spec);

}  // namespace liesurf::geom

#endif  // LIESURF_GEOMETRY_HPP
