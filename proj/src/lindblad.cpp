#include "coop/lindblad.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "coop/errors.hpp"

namespace coop {

namespace {

using smat = Eigen::SparseMatrix<cplx>;
const cplx I1{0.0, 1.0};

smat to_sparse(const cmat& m) { return m.sparseView(1.0, 0.0); }

// Precomputed pieces of the generator: rho' = -i(Heff rho - rho Heff^+) + sum 2 r O rho O^+
struct Generator {
    smat heff;
    smat heff_adj;
    std::vector<smat> ops;
    std::vector<smat> ops_adj;
    std::vector<double> rates;

    explicit Generator(const LindbladModel& m) {
        cmat h = m.hamiltonian;
        for (const auto& c : m.collapse) {
            if (c.rate == 0.0) continue;
            h -= I1 * c.rate * (c.op.adjoint() * c.op);
            ops.push_back(to_sparse(c.op));
            ops_adj.push_back(to_sparse(c.op.adjoint()));
            rates.push_back(c.rate);
        }
        heff = to_sparse(h);
        heff_adj = to_sparse(h.adjoint());
    }

    cmat apply(const cmat& rho) const {
        cmat out = -I1 * (heff * rho);
        out += I1 * (rho * heff_adj);
        for (std::size_t k = 0; k < ops.size(); ++k) {
            cmat tmp = rho * ops_adj[k];
            out += (2.0 * rates[k]) * (ops[k] * tmp);
        }
        return out;
    }
};

smat kron(const smat& a, const smat& b) {
    smat out(a.rows() * b.rows(), a.cols() * b.cols());
    std::vector<Eigen::Triplet<cplx>> trip;
    trip.reserve(std::size_t(a.nonZeros()) * std::size_t(b.nonZeros()));
    for (int ka = 0; ka < a.outerSize(); ++ka)
        for (smat::InnerIterator ia(a, ka); ia; ++ia)
            for (int kb = 0; kb < b.outerSize(); ++kb)
                for (smat::InnerIterator ib(b, kb); ib; ++ib)
                    trip.emplace_back(ia.row() * b.rows() + ib.row(), ia.col() * b.cols() + ib.col(),
                                      ia.value() * ib.value());
    out.setFromTriplets(trip.begin(), trip.end());
    return out;
}

smat sparse_identity(Eigen::Index n) {
    smat id(n, n);
    id.setIdentity();
    return id;
}

// vec(A rho B) = (B^T kron A) vec(rho), column-major
smat sparse_liouvillian(const LindbladModel& m) {
    const Eigen::Index d = m.dim();
    smat id = sparse_identity(d);
    cmat heff = m.hamiltonian;
    for (const auto& c : m.collapse) heff -= I1 * c.rate * (c.op.adjoint() * c.op);
    smat hs = to_sparse(heff);
    smat hsa = to_sparse(heff.adjoint());
    smat l = -I1 * kron(id, hs) + I1 * kron(smat(hsa.transpose()), id);
    for (const auto& c : m.collapse) {
        if (c.rate == 0.0) continue;
        smat o = to_sparse(c.op);
        smat oc = to_sparse(c.op.conjugate());
        l += (2.0 * c.rate) * kron(oc, o);
    }
    l.prune(cplx(0.0, 0.0));
    return l;
}

std::vector<int> digits_of(Eigen::Index idx, const std::vector<int>& dims) {
    std::vector<int> d(dims.size());
    for (int s = int(dims.size()) - 1; s >= 0; --s) {
        d[s] = int(idx % dims[s]);
        idx /= dims[s];
    }
    return d;
}

Eigen::Index index_of(const std::vector<int>& digits, const std::vector<int>& dims) {
    Eigen::Index idx = 0;
    for (std::size_t s = 0; s < dims.size(); ++s) idx = idx * dims[s] + digits[s];
    return idx;
}

} // namespace

void LindbladModel::validate() const {
    require(hamiltonian.rows() == hamiltonian.cols() && hamiltonian.rows() > 0,
            "Hamiltonian must be square and nonempty");
    const double hn = std::max(1.0, hamiltonian.norm());
    require((hamiltonian - hamiltonian.adjoint()).norm() <= 1e-10 * hn,
            "Hamiltonian must be Hermitian");
    for (const auto& c : collapse) {
        require(c.rate >= 0.0, "collapse rates must be non-negative");
        require(c.op.rows() == dim() && c.op.cols() == dim(), "collapse operator dimension mismatch");
    }
    if (!site_dims.empty()) {
        Eigen::Index p = 1;
        for (int s : site_dims) p *= s;
        require(p == dim(), "site dimensions do not factor the Hilbert space");
    }
}

cmat LindbladModel::rhs(const cmat& rho) const {
    cmat out = -I1 * (hamiltonian * rho - rho * hamiltonian);
    for (const auto& c : collapse) {
        cmat od = c.op.adjoint();
        cmat odo = od * c.op;
        out += c.rate * (2.0 * c.op * rho * od - odo * rho - rho * odo);
    }
    return out;
}

cmat LindbladModel::liouvillian() const { return cmat(sparse_liouvillian(*this)); }

cmat identity(Eigen::Index n) { return cmat::Identity(n, n); }

cmat sigma_minus() {
    cmat s = cmat::Zero(2, 2);
    s(0, 1) = 1.0;
    return s;
}

cmat destroy(int levels) {
    require(levels >= 1, "oscillator needs at least one level");
    cmat a = cmat::Zero(levels, levels);
    for (int n = 1; n < levels; ++n) a(n - 1, n) = std::sqrt(double(n));
    return a;
}

cmat embed(const cmat& local, int site, const std::vector<int>& dims) {
    require(site >= 0 && site < int(dims.size()), "site index out of range");
    require(local.rows() == dims[site] && local.cols() == dims[site], "local operator dimension mismatch");
    Eigen::Index before = 1, after = 1;
    for (int s = 0; s < site; ++s) before *= dims[s];
    for (int s = site + 1; s < int(dims.size()); ++s) after *= dims[s];
    const Eigen::Index d = before * dims[site] * after;
    cmat out = cmat::Zero(d, d);
    for (Eigen::Index b = 0; b < before; ++b)
        for (Eigen::Index i = 0; i < local.rows(); ++i)
            for (Eigen::Index j = 0; j < local.cols(); ++j) {
                const cplx v = local(i, j);
                if (v == cplx(0.0)) continue;
                for (Eigen::Index a = 0; a < after; ++a)
                    out((b * dims[site] + i) * after + a, (b * dims[site] + j) * after + a) = v;
            }
    return out;
}

DecayChannels decay_channels(const Eigen::MatrixXd& g, double tol) {
    require(g.rows() == g.cols(), "decay matrix must be square");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (g + g.transpose()));
    DecayChannels ch;
    ch.rates = es.eigenvalues();
    ch.vectors = es.eigenvectors();
    const double scale = std::max(1.0, g.diagonal().cwiseAbs().maxCoeff());
    for (Eigen::Index k = 0; k < ch.rates.size(); ++k) {
        if (ch.rates(k) < 0.0) {
            if (ch.rates(k) < -tol * scale)
                fail(ErrorKind::Numerical, "decay matrix is not positive semidefinite");
            ch.rates(k) = 0.0;
        }
    }
    return ch;
}

LindbladModel build_collective_model(const EmitterEnsemble& e, const CouplingMatrices& c,
                                     const std::optional<CollectiveDrive>& drive,
                                     const CollectiveModelOptions& opt) {
    const std::size_t n = e.size();
    if (n > opt.max_emitters)
        fail(ErrorKind::Capacity, "full Hilbert space limited to " + std::to_string(opt.max_emitters) +
                                      " emitters, got " + std::to_string(n));
    require(Eigen::Index(n) == c.size(), "coupling matrices do not match ensemble");
    std::vector<int> dims(n, 2);
    const Eigen::Index d = Eigen::Index(1) << n;
    std::vector<cmat> sm(n);
    for (std::size_t j = 0; j < n; ++j) sm[j] = embed(sigma_minus(), int(j), dims);

    LindbladModel m;
    m.site_dims = dims;
    m.hamiltonian = cmat::Zero(d, d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && c.omega(i, j) != 0.0)
                m.hamiltonian += c.omega(i, j) * sm[i].adjoint() * sm[j];
    if (drive) {
        require(drive->eta.empty() || drive->eta.size() == n, "drive amplitudes must match emitter count");
        require(drive->detuning.empty() || drive->detuning.size() == n, "detunings must match emitter count");
        for (std::size_t j = 0; j < n; ++j) {
            if (!drive->detuning.empty()) m.hamiltonian += drive->detuning[j] * sm[j].adjoint() * sm[j];
            if (!drive->eta.empty()) {
                cmat t = drive->eta[j] * sm[j].adjoint();
                m.hamiltonian += t + t.adjoint();
            }
        }
    }
    DecayChannels ch = decay_channels(c.gamma);
    for (Eigen::Index k = 0; k < ch.rates.size(); ++k) {
        if (ch.rates(k) == 0.0) continue;
        cmat pk = cmat::Zero(d, d);
        for (std::size_t j = 0; j < n; ++j) pk += ch.vectors(Eigen::Index(j), k) * sm[j];
        m.collapse.push_back({pk, ch.rates(k)});
    }
    for (Eigen::Index b = 0; b < d; ++b) {
        std::string lab;
        for (std::size_t j = 0; j < n; ++j) lab += ((b >> (n - 1 - j)) & 1) ? 'e' : 'g';
        m.basis_labels.push_back(lab);
    }
    return m;
}

void check_density(const cmat& rho, double trace_tol) {
    require(rho.rows() == rho.cols(), "density operator must be square");
    require((rho - rho.adjoint()).norm() <= 1e-9 * std::max(1.0, rho.norm()), "density operator must be Hermitian");
    require(std::abs(rho.trace() - cplx(1.0)) <= trace_tol, "density operator must have unit trace");
    Eigen::SelfAdjointEigenSolver<cmat> es(rho, Eigen::EigenvaluesOnly);
    require(es.eigenvalues()(0) >= -1e-8, "density operator must be positive");
}

std::vector<cmat> evolve_density(const LindbladModel& m, const cmat& rho0,
                                 const std::vector<double>& times, const EvolveOptions& opt) {
    m.validate();
    require(rho0.rows() == m.dim(), "initial state dimension mismatch");
    check_density(rho0);
    Generator gen(m);
    std::vector<cmat> out(times.size());
    auto rhs = [&](double, const cmat& r) { return gen.apply(r); };
    integrate_dopri5<cmat>(
        rhs, rho0, times,
        [&](std::size_t i, double t, const cmat& r) {
            cmat h = 0.5 * (r + r.adjoint());
            if (opt.monitor_positivity) {
                Eigen::SelfAdjointEigenSolver<cmat> es(h, Eigen::EigenvaluesOnly);
                if (es.eigenvalues()(0) < -opt.positivity_tol)
                    fail(ErrorKind::Numerical, "density operator lost positivity at t=" + std::to_string(t) +
                                                   " (min eigenvalue " +
                                                   std::to_string(es.eigenvalues()(0)) + ")");
            }
            out[i] = h;
        },
        opt.ode);
    return out;
}

cmat steady_state(const LindbladModel& m, const SteadyStateOptions& opt) {
    m.validate();
    const Eigen::Index d = m.dim();
    smat l = sparse_liouvillian(m);
    l.makeCompressed();
    // forward closure of the populations under L: the steady state lives there
    std::vector<char> seen(std::size_t(d * d), 0);
    std::vector<Eigen::Index> stack;
    for (Eigen::Index i = 0; i < d; ++i) {
        seen[std::size_t(i + i * d)] = 1;
        stack.push_back(i + i * d);
    }
    while (!stack.empty()) {
        Eigen::Index col = stack.back();
        stack.pop_back();
        for (smat::InnerIterator it(l, col); it; ++it) {
            if (!seen[std::size_t(it.row())]) {
                seen[std::size_t(it.row())] = 1;
                stack.push_back(it.row());
            }
        }
    }
    std::vector<Eigen::Index> sub;
    std::vector<Eigen::Index> pos(std::size_t(d * d), -1);
    for (Eigen::Index k = 0; k < d * d; ++k)
        if (seen[std::size_t(k)]) {
            pos[std::size_t(k)] = Eigen::Index(sub.size());
            sub.push_back(k);
        }
    const Eigen::Index ns = Eigen::Index(sub.size());
    cmat ls = cmat::Zero(ns, ns);
    for (Eigen::Index c = 0; c < ns; ++c)
        for (smat::InnerIterator it(l, sub[std::size_t(c)]); it; ++it) ls(pos[std::size_t(it.row())], c) = it.value();

    Eigen::BDCSVD<cmat> svd(ls, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (ns > 1 && sv(ns - 2) <= opt.uniqueness_ratio * sv(0))
        fail(ErrorKind::NonUniqueSteadyState, "Liouvillian has a degenerate zero mode");
    cvec v = svd.matrixV().col(ns - 1);
    cmat rho = cmat::Zero(d, d);
    for (Eigen::Index k = 0; k < ns; ++k) {
        Eigen::Index g = sub[std::size_t(k)];
        rho(g % d, g / d) = v(k);
    }
    cplx tr = rho.trace();
    if (std::abs(tr) < 1e-14) fail(ErrorKind::Numerical, "steady-state null vector is traceless");
    rho /= tr;
    return 0.5 * (rho + rho.adjoint());
}

cplx expect(const cmat& rho, const cmat& op) { return (op * rho).trace(); }

cmat partial_transpose(const cmat& rho, const std::vector<int>& dims, const std::vector<int>& part) {
    Eigen::Index p = 1;
    for (int s : dims) {
        require(s >= 1, "site dimensions must be positive");
        p *= s;
    }
    require(p == rho.rows() && rho.rows() == rho.cols(), "partition inconsistent with factorization");
    std::vector<char> in(dims.size(), 0);
    for (int s : part) {
        require(s >= 0 && s < int(dims.size()), "partition site out of range");
        in[std::size_t(s)] = 1;
    }
    cmat out(p, p);
    for (Eigen::Index i = 0; i < p; ++i) {
        auto di = digits_of(i, dims);
        for (Eigen::Index j = 0; j < p; ++j) {
            auto dj = digits_of(j, dims);
            auto a = di, b = dj;
            for (std::size_t s = 0; s < dims.size(); ++s)
                if (in[s]) std::swap(a[s], b[s]);
            out(index_of(a, dims), index_of(b, dims)) = rho(i, j);
        }
    }
    return out;
}

double log_negativity(const cmat& rho, const std::vector<int>& dims, const std::vector<int>& part) {
    cmat pt = partial_transpose(rho, dims, part);
    Eigen::SelfAdjointEigenSolver<cmat> es(0.5 * (pt + pt.adjoint()), Eigen::EigenvaluesOnly);
    return std::log2(es.eigenvalues().cwiseAbs().sum());
}

double g2_zero(const cmat& rho, const std::vector<WeightedOp>& ops) {
    require(!ops.empty(), "g2 needs at least one operator");
    cmat a = cmat::Zero(rho.rows(), rho.cols());
    for (const auto& w : ops) a += w.weight * w.op;
    cmat ad = a.adjoint();
    const double n1 = expect(rho, ad * a).real();
    if (!(n1 > 1e-300)) fail(ErrorKind::Domain, "zero intensity, g2 undefined");
    const double n2 = expect(rho, ad * ad * a * a).real();
    return n2 / (n1 * n1);
}

double g2_zero(const LindbladModel& m, const std::vector<WeightedOp>& ops) {
    return g2_zero(steady_state(m), ops);
}

cmat projector(Eigen::Index dim, Eigen::Index k) {
    require(k >= 0 && k < dim, "basis index out of range");
    cmat p = cmat::Zero(dim, dim);
    p(k, k) = 1.0;
    return p;
}

cmat pure_state(const cvec& psi) {
    cvec v = psi / psi.norm();
    return v * v.adjoint();
}

} // namespace coop
