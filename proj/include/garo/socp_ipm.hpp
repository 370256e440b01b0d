#ifndef GARO_SOCP_IPM_HPP
#define GARO_SOCP_IPM_HPP

#include <cmath>
#include <vector>

#include "garo/conic_program.hpp"
#include "garo/core.hpp"

namespace garo {
namespace detail {

// Primal-dual interior-point method for
//
//   min c'x  s.t.  G x + s = h,  A x = b,  s in K,
//
// where K is a product of a nonnegative orthant and second-order cones,
// using the homogeneous self-dual embedding with Nesterov-Todd scaling
// (the conelp algorithm of Vandenberghe's CVXOPT, dense linear algebra,
// 'l' and 'q' cones only).
class ConeLp {
public:
  struct Dims {
    int l = 0;               // nonnegative orthant size
    std::vector<int> q;      // second-order cone sizes (each >= 1)
    int total() const {
      int t = l;
      for (int m : q) t += m;
      return t;
    }
  };

  enum class Status { Optimal, PrimalInfeasible, DualInfeasible, Unknown };

  struct Result {
    Status status = Status::Unknown;
    Vector x, s, z, y;
    double pcost = 0.0, dcost = 0.0;
    double gap = 0.0, pres = 0.0, dres = 0.0;
    int iterations = 0;
  };

  ConeLp(Vector c, Matrix G, Vector h, Dims dims, Matrix A, Vector b)
      : c_(std::move(c)), G_(std::move(G)), h_(std::move(h)), dims_(std::move(dims)),
        A_(std::move(A)), b_(std::move(b)),
        n_(static_cast<int>(c_.size())), p_(static_cast<int>(b_.size())),
        N_(dims_.total()) {}

  static constexpr double kFeasTol = 1e-8;
  static constexpr double kAbsTol = 1e-8;
  static constexpr double kRelTol = 1e-9;
  static constexpr double kStep = 0.99;
  static constexpr int kMaxIters = 100;

  Result solve() {
    Result res;
    const double resx0 = std::max(1.0, c_.norm());
    const double resy0 = std::max(1.0, b_.norm());
    const double resz0 = std::max(1.0, h_.norm());

    // Identity scaling for the initial least-squares KKT solves.
    Scaling W = identity_scaling();
    if (!factor_kkt(W)) return res;

    // Primal start: minimize ||G x - h|| s.t. A x = b.
    Vector x = Vector::Zero(n_), y = b_, s = h_;
    if (!kkt_solve(x, y, s)) return res;
    s = -s;
    // Dual start: minimize ||z|| s.t. G'z + A'y + c = 0.
    Vector dx = -c_, yy = Vector::Zero(p_), z = Vector::Zero(N_);
    if (!kkt_solve(dx, yy, z)) return res;
    y = yy;

    const double ts0 = max_step(s), tz0 = max_step(z);
    if (ts0 >= -1e-8 * std::max(s.norm(), 1.0)) cone_shift(s, 1.0 + ts0);
    if (tz0 >= -1e-8 * std::max(z.norm(), 1.0)) cone_shift(z, 1.0 + tz0);

    double tau = 1.0, kappa = 1.0;
    double gap = s.dot(z);
    double dg = 1.0, dgi = 1.0, lmbda_g = 1.0;
    Vector lmbda(N_);

    Vector x1, y1, z1, th;
    Vector ws3(N_);
    double wkappa3 = 0.0;

    for (int iters = 0; iters <= kMaxIters; ++iters) {
      // Residuals of the embedded system.
      const Vector hrx = -A_.transpose() * y - G_.transpose() * z;
      const double hresx = hrx.norm();
      const Vector rx = hrx - c_ * tau;
      const double resx = rx.norm() / tau;

      const Vector hry = A_ * x;
      const double hresy = hry.norm();
      const Vector ry = hry - b_ * tau;
      const double resy = ry.norm() / tau;

      const Vector hrz = s + G_ * x;
      const double hresz = hrz.norm();
      const Vector rz = hrz - h_ * tau;
      const double resz = rz.norm() / tau;

      const double cx = c_.dot(x), by = b_.dot(y), hz = h_.dot(z);
      const double rt = kappa + cx + by + hz;

      const double pcost = cx / tau, dcost = -(by + hz) / tau;
      double relgap = -1.0;
      if (pcost < 0.0) relgap = gap / -pcost;
      else if (dcost > 0.0) relgap = gap / dcost;
      const double pres = std::max(resy / resy0, resz / resz0);
      const double dres = resx / resx0;
      const double pinfres = (hz + by < 0.0) ? hresx / resx0 / (-hz - by) : -1.0;
      const double dinfres =
          (cx < 0.0) ? std::max(hresy / resy0, hresz / resz0) / (-cx) : -1.0;

      res.pcost = pcost;
      res.dcost = dcost;
      res.gap = gap;
      res.pres = pres;
      res.dres = dres;
      res.iterations = iters;

      const bool converged =
          pres <= kFeasTol && dres <= kFeasTol &&
          (gap <= kAbsTol || (relgap >= 0.0 && relgap <= kRelTol));
      if (converged || iters == kMaxIters) {
        res.x = x / tau;
        res.y = y / tau;
        res.s = s / tau;
        res.z = z / tau;
        res.status = converged ? Status::Optimal : Status::Unknown;
        return res;
      }
      if (pinfres >= 0.0 && pinfres <= kFeasTol) {
        res.y = y / (-hz - by);
        res.z = z / (-hz - by);
        res.status = Status::PrimalInfeasible;
        return res;
      }
      if (dinfres >= 0.0 && dinfres <= kFeasTol) {
        res.x = x / (-cx);
        res.s = s / (-cx);
        res.status = Status::DualInfeasible;
        return res;
      }

      if (iters == 0) {
        W = compute_scaling(s, z, lmbda);
        dg = std::sqrt(kappa / tau);
        dgi = std::sqrt(tau / kappa);
        lmbda_g = std::sqrt(tau * kappa);
      }

      Vector lmbdasq = ssqr(lmbda);
      const double lmbdasq_g = lmbda_g * lmbda_g;

      if (!factor_kkt(W)) {
        res.x = x / tau; res.y = y / tau; res.s = s / tau; res.z = z / tau;
        res.status = Status::Unknown;
        return res;
      }
      x1 = -c_;
      y1 = b_;
      z1 = h_;
      if (!kkt_solve(x1, y1, z1)) {
        res.x = x / tau; res.y = y / tau; res.s = s / tau; res.z = z / tau;
        res.status = Status::Unknown;
        return res;
      }
      x1 *= dgi;
      y1 *= dgi;
      z1 *= dgi;

      th = h_;
      scale_W(th, W, /*inverse=*/true); // W symmetric: W^{-T} h

      // f6: solve the full embedded Newton system; on entry the arguments
      // hold the right-hand sides, on exit the directions. z and s are in
      // the scaled space (W*dz and W^{-T}*ds).
      auto f6 = [&](Vector& bx, Vector& by_, Vector& bz, double& btau, Vector& bs,
                    double& bkappa) -> bool {
        by_ = -by_;
        sinv(bs, lmbda);
        bs = -bs;
        Vector wbs = bs;
        scale_W(wbs, W, /*inverse=*/false);
        bz = -(bz + wbs);
        if (!kkt_solve(bx, by_, bz)) return false;
        bkappa = -bkappa / lmbda_g;
        btau += bkappa / dgi;
        btau = dgi * (btau + c_.dot(bx) + b_.dot(by_) + th.dot(bz)) /
               (1.0 + z1.squaredNorm());
        bx += btau * x1;
        by_ += btau * y1;
        bz += btau * z1;
        bs -= bz;
        bkappa -= btau;
        return true;
      };

      // mu = ||(lmbda, lmbda_g)||^2 / (1 + cone degree)
      const double mu_full = (lmbda.squaredNorm() + lmbdasq_g) / (1.0 + cone_degree());

      double sigma = 0.0, step = 0.0, tt = 0.0, tk = 0.0;
      Vector dxv, dyv, dzv, dsv;
      double dtau = 0.0, dkappa = 0.0;
      for (int pass = 0; pass < 2; ++pass) {
        dsv = lmbdasq;
        dkappa = lmbdasq_g;
        if (pass == 1) {
          dsv += ws3;
          add_to_cone_identity(dsv, -sigma * mu_full);
          dkappa += wkappa3 - sigma * mu_full;
        }
        dxv = (1.0 - sigma) * rx;
        dyv = (1.0 - sigma) * ry;
        dzv = (1.0 - sigma) * rz;
        dtau = (1.0 - sigma) * rt;
        if (!f6(dxv, dyv, dzv, dtau, dsv, dkappa)) {
          res.x = x / tau; res.y = y / tau; res.s = s / tau; res.z = z / tau;
          res.status = Status::Unknown;
          return res;
        }
        if (pass == 0) {
          ws3 = dsv;
          sprod(ws3, dzv);
          wkappa3 = dtau * dkappa;
        }
        scale2(lmbda, dsv, /*inverse=*/false);
        scale2(lmbda, dzv, /*inverse=*/false);
        const double ts = max_step(dsv);
        const double tz = max_step(dzv);
        tt = -dtau / lmbda_g;
        tk = -dkappa / lmbda_g;
        const double t = std::max({0.0, ts, tz, tt, tk});
        if (t == 0.0) step = 1.0;
        else step = (pass == 0) ? std::min(1.0, 1.0 / t) : std::min(1.0, kStep / t);
        if (pass == 0) sigma = std::pow(1.0 - step, 3.0);
      }

      x += step * dxv;
      y += step * dyv;

      // Updated cone variables in the current scaling.
      dsv *= step;
      dzv *= step;
      add_to_cone_identity(dsv, 1.0);
      add_to_cone_identity(dzv, 1.0);
      scale2(lmbda, dsv, /*inverse=*/true);
      scale2(lmbda, dzv, /*inverse=*/true);

      update_scaling(W, lmbda, dsv, dzv);

      dg *= std::sqrt(1.0 - step * tk) / std::sqrt(1.0 - step * tt);
      dgi = 1.0 / dg;
      lmbda_g *= std::sqrt(1.0 - step * tt) * std::sqrt(1.0 - step * tk);

      s = lmbda;
      scale_W(s, W, /*inverse=*/false);
      z = lmbda;
      scale_W(z, W, /*inverse=*/true);

      kappa = lmbda_g / dgi;
      tau = lmbda_g * dgi;
      gap = lmbda.squaredNorm() / (tau * tau);
    }
    return res;
  }

private:
  struct Scaling {
    Vector d, di;               // orthant block
    std::vector<Vector> v;      // unit-hyperbolic Householder vectors
    std::vector<double> beta;
  };

  double cone_degree() const { return static_cast<double>(N_); }

  Scaling identity_scaling() const {
    Scaling W;
    W.d = Vector::Ones(dims_.l);
    W.di = Vector::Ones(dims_.l);
    for (int m : dims_.q) {
      Vector v = Vector::Zero(m);
      v[0] = 1.0;
      W.v.push_back(v);
      W.beta.push_back(1.0);
    }
    return W;
  }

  static double jdot(const Vector& a, const Vector& b) {
    return a[0] * b[0] - a.tail(a.size() - 1).dot(b.tail(b.size() - 1));
  }
  static double jnrm2(const Vector& a) {
    const double t = a.tail(a.size() - 1).norm();
    return std::sqrt(std::max(0.0, a[0] - t)) * std::sqrt(a[0] + t);
  }

  double max_step(const Vector& u) const {
    double t = -kInf;
    for (int i = 0; i < dims_.l; ++i) t = std::max(t, -u[i]);
    int ind = dims_.l;
    for (int m : dims_.q) {
      t = std::max(t, u.segment(ind + 1, m - 1).norm() - u[ind]);
      ind += m;
    }
    return t == -kInf ? 0.0 : t;
  }

  void cone_shift(Vector& u, double a) const {
    for (int i = 0; i < dims_.l; ++i) u[i] += a;
    int ind = dims_.l;
    for (int m : dims_.q) {
      u[ind] += a;
      ind += m;
    }
  }

  void add_to_cone_identity(Vector& u, double a) const { cone_shift(u, a); }

  Scaling compute_scaling(const Vector& s, const Vector& z, Vector& lmbda) const {
    Scaling W;
    W.d = (s.head(dims_.l).array() / z.head(dims_.l).array()).sqrt();
    W.di = W.d.cwiseInverse();
    lmbda.head(dims_.l) = (s.head(dims_.l).array() * z.head(dims_.l).array()).sqrt();
    int ind = dims_.l;
    for (int m : dims_.q) {
      const Vector sk = s.segment(ind, m), zk = z.segment(ind, m);
      const double aa = jnrm2(sk), bb = jnrm2(zk);
      const double beta = std::sqrt(aa / bb);
      const double cc = std::sqrt((sk.dot(zk) / aa / bb + 1.0) / 2.0);
      Vector v = -zk / bb;
      v[0] = -v[0];
      v += sk / aa;
      v /= 2.0 * cc;
      v[0] += 1.0;
      v /= std::sqrt(2.0 * v[0]);
      W.v.push_back(v);
      W.beta.push_back(beta);

      Vector lk(m);
      lk[0] = cc;
      const double dd = 2 * cc + sk[0] / aa + zk[0] / bb;
      lk.tail(m - 1) = ((cc + zk[0] / bb) / dd / aa) * sk.tail(m - 1) +
                       ((cc + sk[0] / aa) / dd / bb) * zk.tail(m - 1);
      lk *= std::sqrt(aa * bb);
      lmbda.segment(ind, m) = lk;
      ind += m;
    }
    return W;
  }

  // x := W x (inverse=false) or W^{-1} x (inverse=true); W is symmetric.
  void scale_W(Vector& x, const Scaling& W, bool inverse) const {
    if (dims_.l > 0) {
      if (inverse) x.head(dims_.l).array() *= W.di.array();
      else x.head(dims_.l).array() *= W.d.array();
    }
    int ind = dims_.l;
    for (size_t k = 0; k < dims_.q.size(); ++k) {
      const int m = dims_.q[k];
      Vector v = W.v[k];
      double a = inverse ? 1.0 / W.beta[k] : W.beta[k];
      if (inverse) v.tail(m - 1) = -v.tail(m - 1); // J v
      // xk := a * (2 v v' - J) xk
      Vector xk = x.segment(ind, m);
      const double vx = v.dot(xk);
      Vector jxk = xk;
      jxk.tail(m - 1) = -jxk.tail(m - 1);
      x.segment(ind, m) = a * (2.0 * vx * v - jxk);
      ind += m;
    }
  }

  // x := H(lambda^{1/2}) x (inverse=false) or its inverse (inverse=true).
  void scale2(const Vector& lmbda, Vector& x, bool inverse) const {
    if (dims_.l > 0) {
      if (inverse) x.head(dims_.l).array() *= lmbda.head(dims_.l).array();
      else x.head(dims_.l).array() /= lmbda.head(dims_.l).array();
    }
    int ind = dims_.l;
    for (int m : dims_.q) {
      const Vector lk = lmbda.segment(ind, m);
      const double a = jnrm2(lk);
      const Vector l = lk / a;
      Vector xk = x.segment(ind, m);
      double lx;
      if (!inverse) lx = (l[0] * xk[0] - l.tail(m - 1).dot(xk.tail(m - 1)));
      else lx = l.dot(xk);
      const double x0 = xk[0];
      xk[0] = lx;
      double cfac = (lx + x0) / (l[0] + 1.0);
      if (!inverse) cfac = -cfac;
      xk.tail(m - 1) += cfac * l.tail(m - 1);
      xk *= inverse ? a : 1.0 / a;
      x.segment(ind, m) = xk;
      ind += m;
    }
  }

  // x := y o x.
  void sprod(Vector& x, const Vector& y) const {
    if (dims_.l > 0) x.head(dims_.l).array() *= y.head(dims_.l).array();
    int ind = dims_.l;
    for (int m : dims_.q) {
      const double dd = x.segment(ind, m).dot(y.segment(ind, m));
      Vector x1 = y[ind] * x.segment(ind + 1, m - 1) + x[ind] * y.segment(ind + 1, m - 1);
      x[ind] = dd;
      x.segment(ind + 1, m - 1) = x1;
      ind += m;
    }
  }

  // x := y o\ x.
  void sinv(Vector& x, const Vector& y) const {
    if (dims_.l > 0) x.head(dims_.l).array() /= y.head(dims_.l).array();
    int ind = dims_.l;
    for (int m : dims_.q) {
      const Vector yk = y.segment(ind, m);
      const double aa = jnrm2(yk) * jnrm2(yk);
      const double cc = x[ind];
      const double dd = yk.tail(m - 1).dot(x.segment(ind + 1, m - 1));
      x[ind] = cc * yk[0] - dd;
      x.segment(ind + 1, m - 1) =
          (aa / yk[0]) * x.segment(ind + 1, m - 1) + (dd / yk[0] - cc) * yk.tail(m - 1);
      x.segment(ind, m) /= aa;
      ind += m;
    }
  }

  Vector ssqr(const Vector& y) const {
    Vector x = y;
    if (dims_.l > 0) x.head(dims_.l).array() *= y.head(dims_.l).array();
    int ind = dims_.l;
    for (int m : dims_.q) {
      x[ind] = y.segment(ind, m).squaredNorm();
      x.segment(ind + 1, m - 1) *= 2.0 * y[ind];
      ind += m;
    }
    return x;
  }

  // W and lmbda update from the scaled new iterates (s = W^{-T} s_new,
  // z = W z_new in the old scaling).
  void update_scaling(Scaling& W, Vector& lmbda, Vector& s, Vector& z) const {
    if (dims_.l > 0) {
      const auto sl = s.head(dims_.l).array().sqrt();
      const auto zl = z.head(dims_.l).array().sqrt();
      W.d.array() *= sl / zl;
      W.di = W.d.cwiseInverse();
      lmbda.head(dims_.l) = sl * zl;
    }
    int ind = dims_.l;
    for (size_t k = 0; k < dims_.q.size(); ++k) {
      const int m = dims_.q[k];
      Vector& v = W.v[k];
      const double aa = jnrm2(s.segment(ind, m));
      s.segment(ind, m) /= aa;
      const double bb = jnrm2(z.segment(ind, m));
      z.segment(ind, m) /= bb;
      const Vector sk = s.segment(ind, m), zk = z.segment(ind, m);
      const double cc = std::sqrt((1.0 + sk.dot(zk)) / 2.0);
      const double vs = v.dot(sk);
      const double vz = v[0] * zk[0] - v.tail(m - 1).dot(zk.tail(m - 1));
      const double vq = (vs + vz) / 2.0 / cc;
      const double vu = vs - vz;
      lmbda[ind] = cc;
      const double wk0 = 2.0 * v[0] * vq - (sk[0] + zk[0]) / 2.0 / cc;
      const double dd = (v[0] * vu - sk[0] / 2.0 + zk[0] / 2.0) / (wk0 + 1.0);
      lmbda.segment(ind + 1, m - 1) =
          2.0 * (-dd * vq + 0.5 * vu) * v.tail(m - 1) +
          0.5 * (1.0 - dd / cc) * sk.tail(m - 1) + 0.5 * (1.0 + dd / cc) * zk.tail(m - 1);
      lmbda.segment(ind, m) *= std::sqrt(aa * bb);

      v *= 2.0 * vq;
      v[0] -= sk[0] / 2.0 / cc;
      v.tail(m - 1) += (0.5 / cc) * sk.tail(m - 1);
      v -= (0.5 / cc) * zk;
      v[0] += 1.0;
      v /= std::sqrt(2.0 * v[0]);
      W.beta[k] *= std::sqrt(aa / bb);
      ind += m;
    }
  }

  // Factor [0 A' G'W^{-1}; A 0 0; W^{-T}G 0 -I].
  bool factor_kkt(const Scaling& W) {
    const int dim = n_ + p_ + N_;
    Matrix K = Matrix::Zero(dim, dim);
    K.block(n_, 0, p_, n_) = A_;
    K.block(0, n_, n_, p_) = A_.transpose();
    Matrix Gs = G_;
    for (int col = 0; col < n_; ++col) {
      Vector g = Gs.col(col);
      scale_W(g, W, /*inverse=*/true);
      Gs.col(col) = g;
    }
    K.block(n_ + p_, 0, N_, n_) = Gs;
    K.block(0, n_ + p_, n_, N_) = Gs.transpose();
    K.block(n_ + p_, n_ + p_, N_, N_) = -Matrix::Identity(N_, N_);
    lu_.compute(K);
    if (!lu_.isInvertible()) return false;
    scaling_for_solve_ = W;
    return true;
  }

  // On entry (bx, by, bz); on exit (ux, uy, W uz).
  bool kkt_solve(Vector& x, Vector& y, Vector& z) const {
    Vector rhs(n_ + p_ + N_);
    rhs.head(n_) = x;
    rhs.segment(n_, p_) = y;
    Vector zs = z;
    scale_W(zs, scaling_for_solve_, /*inverse=*/true);
    rhs.tail(N_) = zs;
    Vector sol = lu_.solve(rhs);
    if (!sol.allFinite()) return false;
    x = sol.head(n_);
    y = sol.segment(n_, p_);
    z = sol.tail(N_);
    return true;
  }

  Vector c_;
  Matrix G_;
  Vector h_;
  Dims dims_;
  Matrix A_;
  Vector b_;
  int n_, p_, N_;
  Eigen::FullPivLU<Matrix> lu_;
  Scaling scaling_for_solve_;
};

} // namespace detail
} // namespace garo

#endif
