#include "liesurf/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "liesurf/errors.hpp"
#include "liesurf/pde_lang.hpp"

namespace liesurf::geom {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const Vec4 kIdentity(1.0, 0.0, 0.0, 0.0);

Vec4 nan_vec() { return Vec4::Constant(kNaN); }

bool finite(const Vec4& v) { return v.allFinite(); }

std::string node_name(const TranslationSurface& surf, int i, int j) {
    std::ostringstream os;
    os << "node (" << i << ", " << j << ") at (s, t) = (" << surf.grid_s.at(i) << ", " << surf.grid_t.at(j) << ")";
    return os.str();
}

}  // namespace

std::string group_tag(Group g, int dim) { return g == Group::Sphere3 ? "s3" : "r" + std::to_string(dim); }

Vec4 quat_mul(const Vec4& a, const Vec4& b) {
    return {a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
            a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
            a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
            a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
}

Vec4 quat_conj(const Vec4& q) { return {q[0], -q[1], -q[2], -q[3]}; }

UnitQuaternion::UnitQuaternion(double w, double x, double y, double z) : UnitQuaternion(Vec4(w, x, y, z)) {}

UnitQuaternion::UnitQuaternion(const Vec4& v) {
    const double n = v.norm();
    if (!(n > 1e-12)) throw PreconditionError("cannot normalize a zero quaternion");
    q_ = v / n;
}

GroupPoint GroupPoint::euclidean(const Eigen::VectorXd& v) {
    if (v.size() < 1 || v.size() > 4) throw PreconditionError("Euclidean points must have 1 to 4 components");
    Vec4 padded = Vec4::Zero();
    padded.head(v.size()) = v;
    return {Group::Euclidean, static_cast<int>(v.size()), padded};
}

GroupPoint GroupPoint::sphere(const UnitQuaternion& q) { return {Group::Sphere3, 4, q.vec()}; }

GroupPoint GroupPoint::identity(Group group, int dim) {
    if (group == Group::Sphere3) return sphere(UnitQuaternion::identity());
    return {Group::Euclidean, dim, Vec4::Zero()};
}

GroupPoint GroupPoint::operator*(const GroupPoint& other) const {
    if (group_ != other.group_ || dim_ != other.dim_) throw PreconditionError("group mismatch");
    if (group_ == Group::Euclidean) return {group_, dim_, v_ + other.v_};
    return sphere(UnitQuaternion(quat_mul(v_, other.v_)));
}

// ---------------------------------------------------------------------------
// Grids

ParamGrid ParamGrid::centered(double length, double step) {
    if (!(step > 0) || !(length >= 0)) throw PreconditionError("grid step must be positive");
    const int half = static_cast<int>(std::lround(length / (2.0 * step)));
    return {-half * step, step, 2 * half + 1};
}

ParamGrid ParamGrid::centered_nodes(int count, double step) {
    if (count < 1 || !(step > 0)) throw PreconditionError("grid needs at least one node and a positive step");
    const int half = (count - 1) / 2;
    return {-half * step, step, count};
}

std::optional<int> ParamGrid::zero_index() const {
    const double k = -start / step;
    const long r = std::lround(k);
    if (std::abs(k - static_cast<double>(r)) > 1e-9 || r < 0 || r >= count) return std::nullopt;
    return static_cast<int>(r);
}

Grid2::Grid2(int ns_, int nt_) : ns(ns_), nt(nt_), values(static_cast<std::size_t>(ns_ * nt_), kNaN) {}

double Grid2::max_abs_interior() const { return max_deviation_interior(0.0); }

double Grid2::max_deviation_interior(double target) const {
    double m = 0.0;
    for (int i = 1; i < ns - 1; ++i)
        for (int j = 1; j < nt - 1; ++j) {
            const double v = at(i, j);
            if (std::isfinite(v)) m = std::max(m, std::abs(v - target));
        }
    return m;
}

// ---------------------------------------------------------------------------
// Curves

double SampledCurve::max_speed_deviation() const {
    double m = 0.0;
    if (!velocity.empty()) {
        for (const auto& v : velocity)
            if (finite(v)) m = std::max(m, std::abs(v.norm() - 1.0));
        return m;
    }
    for (std::size_t k = 1; k + 1 < position.size(); ++k)
        m = std::max(m, std::abs(((position[k + 1] - position[k - 1]) / (2 * grid.step)).norm() - 1.0));
    return m;
}

SampledCurve analytic_curve(int dim, const ParamGrid& grid, const std::function<CurveJet(double)>& jet) {
    if (dim < 1 || dim > 4) throw PreconditionError("Euclidean curves must live in R^1 .. R^4");
    SampledCurve c;
    c.group = Group::Euclidean;
    c.dim = dim;
    c.grid = grid;
    for (int k = 0; k < grid.count; ++k) {
        const CurveJet j = jet(grid.at(k));
        c.position.push_back(j.position);
        c.velocity.push_back(j.velocity);
        c.acceleration.push_back(j.acceleration);
    }
    return c;
}

SampledCurve sampled_curve(Group group, int dim, const ParamGrid& grid, std::vector<Vec4> positions) {
    if (static_cast<int>(positions.size()) != grid.count) throw PreconditionError("sample count does not match grid");
    SampledCurve c;
    c.group = group;
    c.dim = group == Group::Sphere3 ? 4 : dim;
    c.grid = grid;
    c.position = std::move(positions);
    return c;
}

SampledCurve circle_r3(double radius, const ParamGrid& grid) {
    if (!(radius > 0)) throw PreconditionError("circle radius must be positive");
    return analytic_curve(3, grid, [radius](double s) {
        const double a = s / radius;
        return CurveJet{Vec4(radius * std::sin(a), radius * (1.0 - std::cos(a)), 0, 0),
                        Vec4(std::cos(a), std::sin(a), 0, 0),
                        Vec4(-std::sin(a) / radius, std::cos(a) / radius, 0, 0)};
    });
}

SampledCurve line_r3(const Eigen::Vector3d& direction, const ParamGrid& grid) {
    if (std::abs(direction.norm() - 1.0) > 1e-9) throw PreconditionError("line direction must be a unit vector");
    const Vec4 d(direction[0], direction[1], direction[2], 0);
    return analytic_curve(3, grid, [d](double s) { return CurveJet{s * d, d, Vec4::Zero()}; });
}

SampledCurve geodesic_s3(const Vec4& direction, const ParamGrid& grid) {
    if (std::abs(direction[0]) > 1e-9) throw PreconditionError("geodesic direction must be orthogonal to 1");
    if (std::abs(direction.norm() - 1.0) > 1e-9) throw PreconditionError("geodesic direction must be a unit vector");
    SampledCurve c;
    c.group = Group::Sphere3;
    c.dim = 4;
    c.grid = grid;
    for (int k = 0; k < grid.count; ++k) {
        const double s = grid.at(k);
        const Vec4 p = std::cos(s) * kIdentity + std::sin(s) * direction;
        c.position.push_back(p);
        c.velocity.push_back(-std::sin(s) * kIdentity + std::cos(s) * direction);
        c.acceleration.push_back(-p);
    }
    return c;
}

SampledCurve geodesic_s3(const Vec4& direction, double length, double step) {
    return geodesic_s3(direction, ParamGrid::centered(length, step));
}

FrenetFrame default_frame_a() { return {Vec4(0, 1, 0, 0), Vec4(0, 0, 1, 0), Vec4(0, 0, 0, 1)}; }

FrenetFrame default_frame_b() { return {Vec4(0, 0, 1, 0), Vec4(0, -1, 0, 0), Vec4(0, 0, 0, 1)}; }

namespace {

// Columns: gamma, T, N, B.
using Frame4 = Eigen::Matrix4d;

Frame4 frenet_rhs(const Frame4& f, double kappa, double torsion) {
    Frame4 d;
    d.col(0) = f.col(1);
    d.col(1) = -f.col(0) + kappa * f.col(2);
    d.col(2) = -kappa * f.col(1) + torsion * f.col(3);
    d.col(3) = -torsion * f.col(2);
    return d;
}

void gram_schmidt(Frame4& f) {
    for (int c = 0; c < 4; ++c) {
        for (int p = 0; p < c; ++p) f.col(c) -= f.col(c).dot(f.col(p)) * f.col(p);
        f.col(c).normalize();
    }
}

Frame4 rk4_step(const Frame4& f, double s, double h, const std::function<double(double)>& kappa, double torsion) {
    const Frame4 k1 = frenet_rhs(f, kappa(s), torsion);
    const Frame4 k2 = frenet_rhs(f + 0.5 * h * k1, kappa(s + 0.5 * h), torsion);
    const Frame4 k3 = frenet_rhs(f + 0.5 * h * k2, kappa(s + 0.5 * h), torsion);
    const Frame4 k4 = frenet_rhs(f + h * k3, kappa(s + h), torsion);
    Frame4 out = f + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    gram_schmidt(out);
    return out;
}

Frame4 advance(Frame4 f, double from, double to, double max_step, const std::function<double(double)>& kappa,
               double torsion) {
    const double span = to - from;
    if (span == 0.0) return f;
    const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(span) / max_step - 1e-9)));
    const double h = span / steps;
    for (int k = 0; k < steps; ++k) f = rk4_step(f, from + k * h, h, kappa, torsion);
    return f;
}

}  // namespace

SampledCurve frenet_curve_s3(const std::function<double(double)>& kappa, double torsion, const ParamGrid& grid,
                             const FrenetFrame& initial) {
    Frame4 f0;
    f0.col(0) = kIdentity;
    f0.col(1) = initial.T;
    f0.col(2) = initial.N;
    f0.col(3) = initial.B;
    if ((f0.transpose() * f0 - Frame4::Identity()).cwiseAbs().maxCoeff() > 1e-9)
        throw PreconditionError("initial Frenet frame must be orthonormal and orthogonal to 1");
    if (f0.determinant() < 0) throw PreconditionError("initial Frenet frame must be positively oriented");
    for (int k = 0; k < grid.count; ++k) {
        const double value = kappa(grid.at(k));
        if (!(value > 0)) {
            std::ostringstream os;
            os << "curvature must be positive, got " << value << " at s = " << grid.at(k);
            throw PreconditionError(os.str());
        }
    }

    SampledCurve c;
    c.group = Group::Sphere3;
    c.dim = 4;
    c.grid = grid;
    c.position.resize(static_cast<std::size_t>(grid.count));
    c.velocity.resize(c.position.size());
    c.acceleration.resize(c.position.size());
    c.frames.resize(c.position.size());
    auto record = [&](int k, const Frame4& f) {
        const auto idx = static_cast<std::size_t>(k);
        c.position[idx] = f.col(0);
        c.velocity[idx] = f.col(1);
        c.acceleration[idx] = -f.col(0) + kappa(grid.at(k)) * f.col(2);
        c.frames[idx] = {f.col(1), f.col(2), f.col(3)};
    };
    // integrate outward from s = 0 in both directions
    Frame4 f = f0;
    double at = 0.0;
    for (int k = 0; k < grid.count; ++k) {
        if (grid.at(k) < 0) continue;
        f = advance(f, at, grid.at(k), grid.step, kappa, torsion);
        at = grid.at(k);
        record(k, f);
    }
    f = f0;
    at = 0.0;
    for (int k = grid.count - 1; k >= 0; --k) {
        if (grid.at(k) >= 0) continue;
        f = advance(f, at, grid.at(k), grid.step, kappa, torsion);
        at = grid.at(k);
        record(k, f);
    }
    return c;
}

SampledCurve frenet_curve_s3(const std::function<double(double)>& kappa, double torsion, double length,
                             double step, const FrenetFrame& initial) {
    return frenet_curve_s3(kappa, torsion, ParamGrid::centered(length, step), initial);
}

// ---------------------------------------------------------------------------
// Surfaces

namespace {

struct Jets {
    std::vector<Vec4> d1;
    std::vector<Vec4> d2;
};

Jets curve_jets(const SampledCurve& c) {
    if (c.has_jets()) return {c.velocity, c.acceleration};
    const std::size_t n = c.position.size();
    Jets j{std::vector<Vec4>(n, nan_vec()), std::vector<Vec4>(n, nan_vec())};
    const double h = c.grid.step;
    for (std::size_t k = 1; k + 1 < n; ++k) {
        j.d1[k] = (c.position[k + 1] - c.position[k - 1]) / (2 * h);
        j.d2[k] = (c.position[k + 1] - 2 * c.position[k] + c.position[k - 1]) / (h * h);
    }
    return j;
}

}  // namespace

TranslationSurface translation_surface(const SampledCurve& a, const SampledCurve& b) {
    if (a.group != b.group || a.dim != b.dim) throw PreconditionError("curves live in different groups");
    if (a.grid.count < 1 || b.grid.count < 1) throw PreconditionError("curves have no samples");
    TranslationSurface surf;
    surf.group = a.group;
    surf.dim = a.dim;
    surf.grid_s = a.grid;
    surf.grid_t = b.grid;

    const Jets ja = curve_jets(a);
    const Jets jb = curve_jets(b);

    if (surf.group == Group::Sphere3) {
        const auto za = a.grid.zero_index();
        const auto zb = b.grid.zero_index();
        if (za && zb) {
            const auto ia = static_cast<std::size_t>(*za);
            const auto ib = static_cast<std::size_t>(*zb);
            if ((a.position[ia] - kIdentity).norm() > 1e-9 || (b.position[ib] - kIdentity).norm() > 1e-9)
                throw PreconditionError("both curves must pass through the identity at parameter 0");
            const Vec4& ta = ja.d1[ia];
            const Vec4& tb = jb.d1[ib];
            if (finite(ta) && finite(tb) && std::abs(ta.normalized().dot(tb.normalized())) >= 1.0 - kRegularityMargin)
                surf.warnings.emplace_back("curves are tangent at the identity: degenerate surface (u -> 0 or pi)");
        }
    }

    const auto size = static_cast<std::size_t>(a.grid.count * b.grid.count);
    for (auto* field : {&surf.f, &surf.f_s, &surf.f_t, &surf.f_ss, &surf.f_st, &surf.f_tt}) field->resize(size);
    for (int i = 0; i < a.grid.count; ++i) {
        const auto ii = static_cast<std::size_t>(i);
        for (int j = 0; j < b.grid.count; ++j) {
            const auto jj = static_cast<std::size_t>(j);
            const std::size_t n = surf.index(i, j);
            if (surf.group == Group::Euclidean) {
                surf.f[n] = a.position[ii] + b.position[jj];
                surf.f_s[n] = ja.d1[ii];
                surf.f_t[n] = jb.d1[jj];
                surf.f_ss[n] = ja.d2[ii];
                surf.f_st[n] = finite(ja.d1[ii]) && finite(jb.d1[jj]) ? Vec4::Zero() : nan_vec();
                surf.f_tt[n] = jb.d2[jj];
            } else {
                surf.f[n] = quat_mul(a.position[ii], b.position[jj]);
                surf.f_s[n] = quat_mul(ja.d1[ii], b.position[jj]);
                surf.f_t[n] = quat_mul(a.position[ii], jb.d1[jj]);
                surf.f_ss[n] = quat_mul(ja.d2[ii], b.position[jj]);
                surf.f_st[n] = quat_mul(ja.d1[ii], jb.d1[jj]);
                surf.f_tt[n] = quat_mul(a.position[ii], jb.d2[jj]);
            }
        }
    }
    return surf;
}

Grid2 metric_angle(const TranslationSurface& surf) {
    Grid2 u(surf.ns(), surf.nt());
    for (int i = 0; i < surf.ns(); ++i) {
        for (int j = 0; j < surf.nt(); ++j) {
            const std::size_t n = surf.index(i, j);
            const Vec4& fs = surf.f_s[n];
            const Vec4& ft = surf.f_t[n];
            if (!finite(fs) || !finite(ft)) continue;
            if (std::abs(fs.norm() - 1.0) > kUnitSpeedTolerance || std::abs(ft.norm() - 1.0) > kUnitSpeedTolerance)
                throw PreconditionError("generating curves are not unit speed at " + node_name(surf, i, j));
            const double c = fs.dot(ft);
            if (std::abs(c) > 1.0 - kRegularityMargin)
                throw PreconditionError("surface is not regular (|<f_s, f_t>| reaches 1) at " + node_name(surf, i, j));
            u.at(i, j) = std::acos(c);
        }
    }
    return u;
}

IntrinsicCurvature curvature_intrinsic(const Grid2& u, double step_s, double step_t) {
    if (u.ns < 3 || u.nt < 3) throw PreconditionError("intrinsic curvature needs at least 3 x 3 nodes");
    IntrinsicCurvature out{Grid2(u.ns, u.nt), {}};
    for (int i = 1; i < u.ns - 1; ++i) {
        for (int j = 1; j < u.nt - 1; ++j) {
            const double c = u.at(i, j);
            const double mixed =
                (u.at(i + 1, j + 1) - u.at(i + 1, j - 1) - u.at(i - 1, j + 1) + u.at(i - 1, j - 1)) /
                (4.0 * step_s * step_t);
            if (!std::isfinite(c) || !std::isfinite(mixed)) continue;
            const double s = std::sin(c);
            if (s < kSinThreshold) {
                out.excluded.push_back({i, j});
                continue;
            }
            out.K.at(i, j) = -mixed / s;
        }
    }
    return out;
}

Vec4 cross4(const Vec4& a, const Vec4& b, const Vec4& c) {
    Vec4 out;
    for (int k = 0; k < 4; ++k) {
        Eigen::Matrix4d m;
        m.col(0) = a;
        m.col(1) = b;
        m.col(2) = c;
        m.col(3) = Vec4::Unit(k);
        out[k] = m.determinant();
    }
    return out;
}

FundamentalForms fundamental_forms(const TranslationSurface& surf, int i, int j) {
    const std::size_t n = surf.index(i, j);
    const Vec4& fs = surf.f_s[n];
    const Vec4& ft = surf.f_t[n];
    FundamentalForms ff;
    ff.E = fs.dot(fs);
    ff.F = fs.dot(ft);
    ff.G = ft.dot(ft);
    if (!(ff.det_first() >= kMinFirstFormDet))
        throw PreconditionError("degenerate first fundamental form at " + node_name(surf, i, j));
    Vec4 normal;
    if (surf.group == Group::Sphere3) {
        normal = cross4(surf.f[n], fs, ft);
    } else {
        if (surf.dim != 3) throw PreconditionError("extrinsic curvature needs R^3 or S^3");
        const Eigen::Vector3d c = fs.head<3>().cross(ft.head<3>());
        normal << c, 0.0;
    }
    ff.normal = normal.normalized();
    ff.L = surf.f_ss[n].dot(ff.normal);
    ff.M = surf.f_st[n].dot(ff.normal);
    ff.N = surf.f_tt[n].dot(ff.normal);
    return ff;
}

ExtrinsicCurvature curvature_extrinsic(const TranslationSurface& surf) {
    if (surf.group == Group::Euclidean && surf.dim != 3)
        throw PreconditionError("extrinsic curvature needs R^3 or S^3");
    ExtrinsicCurvature out{Grid2(surf.ns(), surf.nt()), Grid2(surf.ns(), surf.nt())};
    for (int i = 0; i < surf.ns(); ++i) {
        for (int j = 0; j < surf.nt(); ++j) {
            const std::size_t n = surf.index(i, j);
            if (!finite(surf.f_s[n]) || !finite(surf.f_t[n]) || !finite(surf.f_ss[n]) || !finite(surf.f_st[n]) ||
                !finite(surf.f_tt[n]))
                continue;
            const FundamentalForms ff = fundamental_forms(surf, i, j);
            const double gk = ff.det_second() / ff.det_first();
            out.gauss_kronecker.at(i, j) = gk;
            out.K.at(i, j) = surf.group == Group::Sphere3 ? 1.0 + gk : gk;
        }
    }
    return out;
}

CurvatureReport curvature_report(const TranslationSurface& surf) {
    CurvatureReport r;
    r.step_s = surf.grid_s.step;
    r.step_t = surf.grid_t.step;
    r.u = metric_angle(surf);
    IntrinsicCurvature intrinsic = curvature_intrinsic(r.u, r.step_s, r.step_t);
    r.K_intrinsic = std::move(intrinsic.K);
    r.excluded = std::move(intrinsic.excluded);
    ExtrinsicCurvature extrinsic = curvature_extrinsic(surf);
    r.K_extrinsic = std::move(extrinsic.K);
    r.gauss_kronecker = std::move(extrinsic.gauss_kronecker);
    r.max_abs_K_intrinsic = r.K_intrinsic.max_abs_interior();
    r.max_abs_K_extrinsic = r.K_extrinsic.max_abs_interior();
    for (int i = 1; i < surf.ns() - 1; ++i)
        for (int j = 1; j < surf.nt() - 1; ++j) {
            const double d = r.K_intrinsic.at(i, j) - r.K_extrinsic.at(i, j);
            if (std::isfinite(d)) r.max_abs_difference = std::max(r.max_abs_difference, std::abs(d));
        }
    return r;
}

// ---------------------------------------------------------------------------
// Curve invariants

CurveInvariants curve_invariants(const SampledCurve& c) {
    const int n = c.grid.count;
    const double h = c.grid.step;
    const auto un = static_cast<std::size_t>(n);
    std::vector<Vec4> tangent = c.has_jets() ? c.velocity : curve_jets(c).d1;
    const bool sphere = c.group == Group::Sphere3;

    CurveInvariants out;
    out.curvature.assign(un, kNaN);
    out.torsion.assign(un, std::nullopt);
    std::vector<Vec4> normal(un, nan_vec());
    for (int k = 1; k + 1 < n; ++k) {
        const auto i = static_cast<std::size_t>(k);
        if (!finite(tangent[i - 1]) || !finite(tangent[i + 1])) continue;
        Vec4 d = (tangent[i + 1] - tangent[i - 1]) / (2 * h);
        const Vec4 t = tangent[i].normalized();
        if (sphere) d -= d.dot(c.position[i]) * c.position[i];
        d -= d.dot(t) * t;
        const double kappa = d.norm();
        out.curvature[i] = kappa;
        if (kappa > kCurvatureThreshold) normal[i] = d / kappa;
        else out.torsion_undefined.push_back(k);
    }
    if (!sphere && c.dim != 3) return out;
    for (int k = 1; k + 1 < n; ++k) {
        const auto i = static_cast<std::size_t>(k);
        if (!finite(normal[i - 1]) || !finite(normal[i]) || !finite(normal[i + 1])) continue;
        const Vec4 t = tangent[i].normalized();
        Vec4 b;
        if (sphere) {
            b = cross4(c.position[i], t, normal[i]).normalized();
        } else {
            const Eigen::Vector3d v = t.head<3>().cross(normal[i].head<3>());
            b << v, 0.0;
        }
        out.torsion[i] = ((normal[i + 1] - normal[i - 1]) / (2 * h)).dot(b);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Asymptotic directions

std::array<AsymptoticDirection, 2> asymptotic_directions(const TranslationSurface& surf, int i, int j) {
    const FundamentalForms ff = fundamental_forms(surf, i, j);
    const double gk = ff.det_second() / ff.det_first();
    if (!(gk < -kHyperbolicThreshold))
        throw PreconditionError("no real asymptotic directions (elliptic or parabolic point) at " + node_name(surf, i, j));
    Eigen::Matrix2d second;
    second << ff.L, ff.M, ff.M, ff.N;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(second);
    const double lo = eig.eigenvalues()[0];
    const double hi = eig.eigenvalues()[1];
    const Eigen::Vector2d e0 = eig.eigenvectors().col(0);
    const Eigen::Vector2d e1 = eig.eigenvectors().col(1);

    const std::size_t n = surf.index(i, j);
    std::array<AsymptoticDirection, 2> out;
    for (int k = 0; k < 2; ++k) {
        Eigen::Vector2d w = std::sqrt(hi) * e0 + (k == 0 ? 1.0 : -1.0) * std::sqrt(-lo) * e1;
        const double len = std::sqrt(ff.E * w[0] * w[0] + 2 * ff.F * w[0] * w[1] + ff.G * w[1] * w[1]);
        w /= len;
        const double lead = std::abs(w[0]) > 1e-12 ? w[0] : w[1];
        if (lead < 0) w = -w;
        w = w.array() + 0.0;
        out[static_cast<std::size_t>(k)] = {w[0], w[1], w[0] * surf.f_s[n] + w[1] * surf.f_t[n]};
    }
    if (out[0].ds < out[1].ds) std::swap(out[0], out[1]);
    return out;
}

// ---------------------------------------------------------------------------
// Curve specifications

CurveSpec parse_curve_spec(const std::string& text) {
    const auto colon = text.find(':');
    CurveSpec spec;
    spec.kind = text.substr(0, colon);
    if (spec.kind != "geodesic" && spec.kind != "frenet" && spec.kind != "line" && spec.kind != "circle")
        throw InputError("unknown curve kind '" + spec.kind + "' (expected geodesic, frenet, line or circle)");
    std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
    std::istringstream in(rest);
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw InputError("curve option '" + item + "' must be key=value");
        const std::string key = item.substr(0, eq);
        const std::string value = item.substr(eq + 1);
        auto number = [&]() {
            std::size_t used = 0;
            double v = 0;
            try {
                v = std::stod(value, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != value.size() || value.empty()) throw InputError("curve option " + key + " needs a number");
            return v;
        };
        if (spec.kind == "frenet" && key == "kappa") spec.kappa = value;
        else if (spec.kind == "frenet" && key == "tau") spec.torsion = number();
        else if ((spec.kind == "geodesic" || spec.kind == "line") && key == "dir") spec.direction = value;
        else if (spec.kind == "circle" && key == "radius") spec.radius = number();
        else throw InputError("unknown option '" + key + "' for " + spec.kind + " curve");
    }
    if (spec.kind == "geodesic" && spec.direction != "i" && spec.direction != "j" && spec.direction != "k")
        throw InputError("geodesic direction must be i, j or k");
    if (spec.kind == "line") {
        if (spec.direction == "i") spec.direction = "x";
        if (spec.direction != "x" && spec.direction != "y" && spec.direction != "z")
            throw InputError("line direction must be x, y or z");
    }
    if (spec.kind == "frenet") {
        ParseOptions options;
        options.independent = "s";
        options.parameters = std::set<std::string>{};
        options.allow_coefficient_functions = false;
        for (const Symbol& x : free_symbols(parse_expression(spec.kappa, options)))
            if (x != Symbol::independent("s")) throw InputError("kappa may depend on s only, found " + x.name());
    }
    return spec;
}

Group curve_group(const CurveSpec& spec) {
    return spec.kind == "geodesic" || spec.kind == "frenet" ? Group::Sphere3 : Group::Euclidean;
}

SampledCurve build_curve(const CurveSpec& spec, const ParamGrid& grid, bool second) {
    if (spec.kind == "geodesic") {
        Vec4 d = Vec4::Zero();
        d[spec.direction == "i" ? 1 : spec.direction == "j" ? 2 : 3] = 1.0;
        return geodesic_s3(d, grid);
    }
    if (spec.kind == "frenet") {
        ParseOptions options;
        options.independent = "s";
        options.parameters = std::set<std::string>{};
        options.allow_coefficient_functions = false;
        const Expression kappa = parse_expression(spec.kappa, options);
        auto fn = [kappa](double s) { return evaluate_numeric(kappa, {{"s", s}}); };
        return frenet_curve_s3(fn, spec.torsion, grid, second ? default_frame_b() : default_frame_a());
    }
    if (spec.kind == "line") {
        Eigen::Vector3d d = Eigen::Vector3d::Zero();
        d[spec.direction == "x" ? 0 : spec.direction == "y" ? 1 : 2] = 1.0;
        return line_r3(d, grid);
    }
    if (spec.kind == "circle") return circle_r3(spec.radius, grid);
    throw InputError("unknown curve kind '" + spec.kind + "'");
}

}  // namespace liesurf::geom
