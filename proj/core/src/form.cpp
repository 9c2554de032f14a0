#include "caloron/form.hpp"

#include <algorithm>
#include <cmath>

#include "caloron/quadrature.hpp"
#include "caloron/spectral.hpp"

namespace caloron {

namespace {

// Visits every (scalar slot, stride) line of a component grid along `axis`.
// VL scalars per grid point; stride is in scalars.
template <class F>
void for_each_line(const Mesh& mesh, long VL, int axis, F&& fn) {
    const auto shp = mesh.shape();
    const auto pst = mesh.point_strides();
    const long suf = pst[static_cast<size_t>(axis)];
    const long na = shp[static_cast<size_t>(axis)];
    const long pre = mesh.total_points() / (na * suf);
    const long stride = suf * VL;
    for (long ip = 0; ip < pre; ++ip) {
        for (long is = 0; is < suf; ++is) {
            const long base = (ip * na * suf + is) * VL;
            for (long s = 0; s < VL; ++s) fn(base + s, stride);
        }
    }
}

std::vector<cd> derive_component(const Mesh& mesh, const std::vector<cd>& src, long VL, int axis) {
    std::vector<cd> out = src;
    const MeshFactor& f = mesh.factor(axis);
    for_each_line(mesh, VL, axis, [&](long base, long stride) {
        if (f.kind == FactorKind::Circle)
            spectral::circle_derivative(out.data() + base, f.samples, stride);
        else
            spectral::interval_derivative(out.data() + base, f.samples, stride);
    });
    return out;
}

int merge_sign(const AxisSet& lhs, const AxisSet& rhs) {
    int inv = 0;
    for (int i : lhs)
        for (int j : rhs)
            if (j < i) ++inv;
    return (inv & 1) ? -1 : 1;
}

// out += sign * a * b on value blocks, broadcasting scalar ranks and plain
// (depth-1) loop values.
void accumulate_product(const cd* a, int da, int na, const cd* b, int db, int nb, cd* out,
                        int dout, int nout, cd sign) {
    for (int t = 0; t < dout; ++t) {
        const cd* A = a + static_cast<long>(da == 1 ? 0 : t) * na * na;
        const cd* B = b + static_cast<long>(db == 1 ? 0 : t) * nb * nb;
        cd* O = out + static_cast<long>(t) * nout * nout;
        if (na == nout && nb == nout) {
            for (int r = 0; r < nout; ++r)
                for (int c = 0; c < nout; ++c) {
                    cd acc(0.0, 0.0);
                    for (int k = 0; k < nout; ++k) acc += A[r * nout + k] * B[k * nout + c];
                    O[r * nout + c] += sign * acc;
                }
        } else if (na == 1) {
            const cd s = sign * A[0];
            for (int e = 0; e < nout * nout; ++e) O[e] += s * B[e];
        } else {
            const cd s = sign * B[0];
            for (int e = 0; e < nout * nout; ++e) O[e] += s * A[e];
        }
    }
}

AxisSet erase_axis(const AxisSet& axes, int axis) {
    AxisSet out;
    out.reserve(axes.size() - 1);
    for (int a : axes) {
        if (a == axis) continue;
        out.push_back(a > axis ? a - 1 : a);
    }
    return out;
}

} // namespace

MatrixForm::MatrixForm(Mesh mesh, int degree, int value_rank, int loop_samples)
    : mesh_(std::move(mesh)), degree_(degree), n_(value_rank), loop_samples_(loop_samples) {
    if (degree_ < 0) throw DimensionMismatch("form degree must be nonnegative");
    if (n_ < 1) throw DimensionMismatch("value rank must be >= 1");
    if (loop_samples_ < 0 ||
        (loop_samples_ > 0 && (loop_samples_ < 8 || (loop_samples_ & (loop_samples_ - 1)) != 0)))
        throw DimensionMismatch("loop value depth must be 0 or a power of two >= 8");
}

bool MatrixForm::valid_axis_set(const AxisSet& axes) const {
    if (static_cast<int>(axes.size()) != degree_) return false;
    int prev = -1;
    for (int a : axes) {
        if (a <= prev || a >= mesh_.dim()) return false;
        prev = a;
    }
    return true;
}

std::vector<cd>& MatrixForm::component(const AxisSet& axes) {
    if (!valid_axis_set(axes)) throw InvalidAxis("invalid component axis set for this form");
    auto it = comps_.find(axes);
    if (it == comps_.end()) {
        it = comps_
                 .emplace(axes, std::vector<cd>(static_cast<size_t>(mesh_.total_points()) *
                                                    static_cast<size_t>(value_len()),
                                                cd(0.0, 0.0)))
                 .first;
    }
    return it->second;
}

const std::vector<cd>* MatrixForm::find_component(const AxisSet& axes) const {
    auto it = comps_.find(axes);
    return it == comps_.end() ? nullptr : &it->second;
}

std::vector<AxisSet> MatrixForm::axis_sets(int dim, int degree) {
    std::vector<AxisSet> out;
    if (degree < 0 || degree > dim) return out;
    AxisSet cur(static_cast<size_t>(degree));
    // Iterative enumeration of strictly increasing index sets.
    for (int i = 0; i < degree; ++i) cur[static_cast<size_t>(i)] = i;
    if (degree == 0) {
        out.push_back({});
        return out;
    }
    while (true) {
        out.push_back(cur);
        int i = degree - 1;
        while (i >= 0 && cur[static_cast<size_t>(i)] == dim - degree + i) --i;
        if (i < 0) break;
        ++cur[static_cast<size_t>(i)];
        for (int j = i + 1; j < degree; ++j)
            cur[static_cast<size_t>(j)] = cur[static_cast<size_t>(j - 1)] + 1;
    }
    return out;
}

double MatrixForm::max_abs() const {
    double worst = 0.0;
    for (const auto& [axes, data] : comps_)
        for (const cd& z : data) worst = std::max(worst, std::abs(z));
    return worst;
}

double MatrixForm::skew_defect() const {
    double worst = 0.0;
    const long blocks = mesh_.total_points() * value_depth();
    for (const auto& [axes, data] : comps_) {
        for (long b = 0; b < blocks; ++b) {
            const cd* m = data.data() + b * n_ * n_;
            for (int r = 0; r < n_; ++r)
                for (int c = 0; c < n_; ++c)
                    worst = std::max(worst, std::abs(m[r * n_ + c] + std::conj(m[c * n_ + r])));
        }
    }
    return worst;
}

MatrixForm& MatrixForm::operator+=(const MatrixForm& o) {
    if (!mesh_.same_factors(o.mesh_) || degree_ != o.degree_ || n_ != o.n_ ||
        loop_samples_ != o.loop_samples_)
        throw DimensionMismatch("form addition: shape mismatch");
    for (const auto& [axes, data] : o.comps_) {
        std::vector<cd>& dst = component(axes);
        for (size_t i = 0; i < data.size(); ++i) dst[i] += data[i];
    }
    return *this;
}

MatrixForm& MatrixForm::operator-=(const MatrixForm& o) {
    if (!mesh_.same_factors(o.mesh_) || degree_ != o.degree_ || n_ != o.n_ ||
        loop_samples_ != o.loop_samples_)
        throw DimensionMismatch("form subtraction: shape mismatch");
    for (const auto& [axes, data] : o.comps_) {
        std::vector<cd>& dst = component(axes);
        for (size_t i = 0; i < data.size(); ++i) dst[i] -= data[i];
    }
    return *this;
}

MatrixForm& MatrixForm::operator*=(cd scale) {
    for (auto& [axes, data] : comps_)
        for (cd& z : data) z *= scale;
    return *this;
}

MatrixForm constant_scalar_form(const Mesh& mesh, cd value) {
    MatrixForm f(mesh, 0, 1, 0);
    std::vector<cd>& c = f.component({});
    std::fill(c.begin(), c.end(), value);
    return f;
}

MatrixForm constant_matrix_form(const Mesh& mesh, const cmat& value) {
    if (value.rows() != value.cols()) throw DimensionMismatch("constant form: square values only");
    const int n = static_cast<int>(value.rows());
    MatrixForm f(mesh, 0, n, 0);
    std::vector<cd>& c = f.component({});
    const long pts = mesh.total_points();
    for (long p = 0; p < pts; ++p)
        for (int r = 0; r < n; ++r)
            for (int col = 0; col < n; ++col) c[(p * n + r) * n + col] = value(r, col);
    return f;
}

MatrixForm exterior_derivative(const MatrixForm& w) {
    MatrixForm out(w.mesh(), w.degree() + 1, w.rank(), w.loop_samples());
    const long VL = w.value_len();
    for (const AxisSet& target : MatrixForm::axis_sets(w.mesh().dim(), w.degree() + 1)) {
        bool any = false;
        std::vector<cd>* dst = nullptr;
        for (size_t pos = 0; pos < target.size(); ++pos) {
            const int a = target[pos];
            AxisSet source = target;
            source.erase(source.begin() + static_cast<long>(pos));
            const std::vector<cd>* src = w.find_component(source);
            if (!src) continue;
            if (!dst) dst = &out.component(target);
            any = true;
            std::vector<cd> der = derive_component(w.mesh(), *src, VL, a);
            const double sign = (pos & 1) ? -1.0 : 1.0;
            for (size_t i = 0; i < der.size(); ++i) (*dst)[i] += sign * der[i];
        }
        (void)any;
    }
    return out;
}

MatrixForm wedge(const MatrixForm& a, const MatrixForm& b) {
    if (!a.mesh().same_factors(b.mesh())) throw DimensionMismatch("wedge: mesh mismatch");
    if (a.rank() != b.rank() && a.rank() != 1 && b.rank() != 1)
        throw DimensionMismatch("wedge: value ranks must agree or one must be scalar");
    if (a.loop_samples() > 0 && b.loop_samples() > 0 && a.loop_samples() != b.loop_samples())
        throw DimensionMismatch("wedge: loop value depths must agree");
    const int nout = std::max(a.rank(), b.rank());
    const int lout = std::max(a.loop_samples(), b.loop_samples());
    MatrixForm out(a.mesh(), a.degree() + b.degree(), nout, lout);
    const long pts = a.mesh().total_points();
    const int dout = out.value_depth();
    const long vla = a.value_len(), vlb = b.value_len(), vlo = out.value_len();

    for (const auto& [ia, da] : a.components()) {
        for (const auto& [ib, db] : b.components()) {
            // Disjointness: shared axes kill the shuffle term.
            AxisSet merged;
            merged.reserve(ia.size() + ib.size());
            std::merge(ia.begin(), ia.end(), ib.begin(), ib.end(), std::back_inserter(merged));
            bool repeated = false;
            for (size_t i = 1; i < merged.size(); ++i)
                if (merged[i] == merged[i - 1]) repeated = true;
            if (repeated) continue;
            const cd sign(merge_sign(ia, ib), 0.0);
            std::vector<cd>& dst = out.component(merged);
            for (long p = 0; p < pts; ++p)
                accumulate_product(da.data() + p * vla, a.value_depth(), a.rank(),
                                   db.data() + p * vlb, b.value_depth(), b.rank(),
                                   dst.data() + p * vlo, dout, nout, sign);
        }
    }
    return out;
}

MatrixForm bracket(const MatrixForm& a, const MatrixForm& b) {
    MatrixForm out = wedge(a, b);
    const double parity = ((a.degree() * b.degree()) & 1) ? -1.0 : 1.0;
    MatrixForm rev = wedge(b, a);
    rev *= cd(parity, 0.0);
    out -= rev;
    return out;
}

cmat integrate_top(const MatrixForm& w, int gl_nodes) {
    if (w.degree() != w.mesh().dim()) throw DimensionMismatch("integrate_top: not a top form");
    if (w.loop_samples() > 0)
        throw DimensionMismatch("integrate_top: integrate loop values first");
    cmat acc = cmat::Zero(w.rank(), w.rank());
    AxisSet top(static_cast<size_t>(w.degree()));
    for (int i = 0; i < w.degree(); ++i) top[static_cast<size_t>(i)] = i;
    const std::vector<cd>* comp = w.find_component(top);
    if (!comp) return acc;

    const int dim = w.mesh().dim();
    std::vector<std::vector<double>> wts(static_cast<size_t>(dim));
    for (int a = 0; a < dim; ++a) wts[static_cast<size_t>(a)] = w.mesh().axis_quadrature(a, gl_nodes);

    const auto shp = w.mesh().shape();
    std::vector<int> idx(static_cast<size_t>(dim), 0);
    const long pts = w.mesh().total_points();
    const int n = w.rank();
    for (long p = 0; p < pts; ++p) {
        double qw = 1.0;
        for (int a = 0; a < dim; ++a) qw *= wts[static_cast<size_t>(a)][static_cast<size_t>(idx[static_cast<size_t>(a)])];
        if (w.mesh().has_weight()) qw *= w.mesh().weight()[static_cast<size_t>(p)];
        const cd* m = comp->data() + p * n * n;
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) acc(r, c) += qw * m[r * n + c];
        for (int a = dim - 1; a >= 0; --a) {
            if (++idx[static_cast<size_t>(a)] < shp[static_cast<size_t>(a)]) break;
            idx[static_cast<size_t>(a)] = 0;
        }
    }
    return acc;
}

MatrixForm fiber_integrate(const MatrixForm& w, int axis, int gl_nodes) {
    if (axis < 0 || axis >= w.mesh().dim()) throw InvalidAxis("fiber_integrate: bad axis");
    if (w.mesh().has_weight())
        throw ValidationError("fiber_integrate: weighted meshes are top-integration only");
    const Mesh reduced = w.mesh().without_axis(axis);
    MatrixForm out(reduced, std::max(0, w.degree() - 1), w.rank(), w.loop_samples());
    if (w.degree() == 0) return out;

    const std::vector<double> qw = w.mesh().axis_quadrature(axis, gl_nodes);
    const auto shp = w.mesh().shape();
    const auto pst = w.mesh().point_strides();
    const long suf = pst[static_cast<size_t>(axis)];
    const long na = shp[static_cast<size_t>(axis)];
    const long pre = w.mesh().total_points() / (na * suf);
    const long VL = w.value_len();

    for (const auto& [axes, data] : w.components()) {
        auto it = std::find(axes.begin(), axes.end(), axis);
        if (it == axes.end()) continue;
        const long pos = it - axes.begin();
        const double sign = ((static_cast<long>(axes.size()) - 1 - pos) & 1) ? -1.0 : 1.0;
        std::vector<cd>& dst = out.component(erase_axis(axes, axis));
        for (long ip = 0; ip < pre; ++ip) {
            for (long is = 0; is < suf; ++is) {
                const long src_base = (ip * na * suf + is) * VL;
                const long dst_base = (ip * suf + is) * VL;
                for (long j = 0; j < na; ++j) {
                    const double f = sign * qw[static_cast<size_t>(j)];
                    const cd* s = data.data() + src_base + j * suf * VL;
                    cd* d = dst.data() + dst_base;
                    for (long v = 0; v < VL; ++v) d[v] += f * s[v];
                }
            }
        }
    }
    return out;
}

MatrixForm slice(const MatrixForm& w, int axis, int index) {
    if (axis < 0 || axis >= w.mesh().dim()) throw InvalidAxis("slice: bad axis");
    if (index < 0 || index >= w.mesh().factor(axis).samples)
        throw InvalidAxis("slice: index out of range");
    if (w.mesh().has_weight())
        throw ValidationError("slice: weighted meshes are top-integration only");
    const Mesh reduced = w.mesh().without_axis(axis);
    MatrixForm out(reduced, w.degree(), w.rank(), w.loop_samples());

    const auto shp = w.mesh().shape();
    const auto pst = w.mesh().point_strides();
    const long suf = pst[static_cast<size_t>(axis)];
    const long na = shp[static_cast<size_t>(axis)];
    const long pre = w.mesh().total_points() / (na * suf);
    const long VL = w.value_len();

    for (const auto& [axes, data] : w.components()) {
        if (std::find(axes.begin(), axes.end(), axis) != axes.end()) continue;
        AxisSet target;
        target.reserve(axes.size());
        for (int a : axes) target.push_back(a > axis ? a - 1 : a);
        std::vector<cd>& dst = out.component(target);
        for (long ip = 0; ip < pre; ++ip) {
            for (long is = 0; is < suf; ++is) {
                const long src_base = ((ip * na + index) * suf + is) * VL;
                const long dst_base = (ip * suf + is) * VL;
                for (long v = 0; v < VL; ++v) dst[dst_base + v] = data[src_base + v];
            }
        }
    }
    return out;
}

MatrixForm trace_form(const MatrixForm& w) {
    MatrixForm out(w.mesh(), w.degree(), 1, w.loop_samples());
    const long blocks = w.mesh().total_points() * w.value_depth();
    const int n = w.rank();
    for (const auto& [axes, data] : w.components()) {
        std::vector<cd>& dst = out.component(axes);
        for (long b = 0; b < blocks; ++b) {
            cd acc(0.0, 0.0);
            for (int r = 0; r < n; ++r) acc += data[b * n * n + r * n + r];
            dst[static_cast<size_t>(b)] = acc;
        }
    }
    return out;
}

MatrixForm loop_value_integral(const MatrixForm& w) {
    if (w.loop_samples() == 0) throw DimensionMismatch("loop_value_integral: plain form");
    MatrixForm out(w.mesh(), w.degree(), w.rank(), 0);
    const long pts = w.mesh().total_points();
    const int L = w.loop_samples();
    const int nn = w.rank() * w.rank();
    const double h = theta_period / L;
    for (const auto& [axes, data] : w.components()) {
        std::vector<cd>& dst = out.component(axes);
        for (long p = 0; p < pts; ++p)
            for (int t = 0; t < L; ++t) {
                const cd* s = data.data() + (p * L + t) * nn;
                cd* d = dst.data() + p * nn;
                for (int e = 0; e < nn; ++e) d[e] += h * s[e];
            }
    }
    return out;
}

MatrixForm loop_value_derivative(const MatrixForm& w) {
    if (w.loop_samples() == 0) throw DimensionMismatch("loop_value_derivative: plain form");
    MatrixForm out = w;
    const long pts = w.mesh().total_points();
    const int L = w.loop_samples();
    const int nn = w.rank() * w.rank();
    for (auto& [axes, data] : out.components()) {
        for (long p = 0; p < pts; ++p)
            for (int e = 0; e < nn; ++e)
                spectral::circle_derivative(data.data() + p * L * nn + e, L, nn);
    }
    return out;
}

MatrixForm broadcast_loop_values(const MatrixForm& w, int loop_samples) {
    if (w.loop_samples() != 0) throw DimensionMismatch("broadcast_loop_values: already loop-valued");
    MatrixForm out(w.mesh(), w.degree(), w.rank(), loop_samples);
    const long pts = w.mesh().total_points();
    const int nn = w.rank() * w.rank();
    for (const auto& [axes, data] : w.components()) {
        std::vector<cd>& dst = out.component(axes);
        for (long p = 0; p < pts; ++p)
            for (int t = 0; t < loop_samples; ++t)
                for (int e = 0; e < nn; ++e) dst[(p * loop_samples + t) * nn + e] = data[p * nn + e];
    }
    return out;
}

MatrixForm block_sum_values(const MatrixForm& a, const MatrixForm& b) {
    if (!a.mesh().same_factors(b.mesh()) || a.degree() != b.degree() ||
        a.loop_samples() != b.loop_samples())
        throw DimensionMismatch("block_sum_values: shape mismatch");
    const int n = a.rank() + b.rank();
    MatrixForm out(a.mesh(), a.degree(), n, a.loop_samples());
    const long blocks = a.mesh().total_points() * a.value_depth();
    auto place = [&](const MatrixForm& src, int offset) {
        const int ns = src.rank();
        for (const auto& [axes, data] : src.components()) {
            std::vector<cd>& dst = out.component(axes);
            for (long bk = 0; bk < blocks; ++bk)
                for (int r = 0; r < ns; ++r)
                    for (int c = 0; c < ns; ++c)
                        dst[bk * n * n + (r + offset) * n + (c + offset)] =
                            data[bk * ns * ns + r * ns + c];
        }
    };
    place(a, 0);
    place(b, a.rank());
    return out;
}

std::map<AxisSet, cd> circle_periods(const MatrixForm& w) {
    if (w.rank() != 1 || w.loop_samples() != 0)
        throw DimensionMismatch("circle_periods: scalar plain forms only");
    std::map<AxisSet, cd> out;
    AxisSet circles;
    for (int a = 0; a < w.mesh().dim(); ++a)
        if (w.mesh().factor(a).kind == FactorKind::Circle) circles.push_back(a);
    for (const AxisSet& pick : MatrixForm::axis_sets(static_cast<int>(circles.size()), w.degree())) {
        AxisSet cycle;
        for (int i : pick) cycle.push_back(circles[static_cast<size_t>(i)]);
        MatrixForm cur = w;
        // Slice the complementary axes at index 0, highest axis first so the
        // remaining indices stay valid.
        for (int a = w.mesh().dim() - 1; a >= 0; --a) {
            if (std::find(cycle.begin(), cycle.end(), a) != cycle.end()) continue;
            cur = slice(cur, a, 0);
        }
        out[cycle] = integrate_top(cur)(0, 0);
    }
    return out;
}

GradedForm graded_add(const GradedForm& a, const GradedForm& b) {
    GradedForm out = a;
    for (const auto& [deg, part] : b) {
        auto it = out.find(deg);
        if (it == out.end())
            out.emplace(deg, part);
        else
            it->second += part;
    }
    return out;
}

GradedForm graded_scale(cd s, const GradedForm& a) {
    GradedForm out = a;
    for (auto& [deg, part] : out) part *= s;
    return out;
}

GradedForm graded_d(const GradedForm& a) {
    GradedForm out;
    for (const auto& [deg, part] : a)
        if (deg < part.mesh().dim()) out.emplace(deg + 1, exterior_derivative(part));
    return out;
}

double graded_max_abs(const GradedForm& a) {
    double worst = 0.0;
    for (const auto& [deg, part] : a) worst = std::max(worst, part.max_abs());
    return worst;
}

double graded_distance(const GradedForm& a, const GradedForm& b) {
    double worst = 0.0;
    for (const auto& [deg, part] : a) {
        auto it = b.find(deg);
        if (it == b.end())
            worst = std::max(worst, part.max_abs());
        else
            worst = std::max(worst, (part - it->second).max_abs());
    }
    for (const auto& [deg, part] : b)
        if (!a.count(deg)) worst = std::max(worst, part.max_abs());
    return worst;
}

} // namespace caloron
