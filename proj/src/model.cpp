// SPDX-License-Identifier: Apache-2.0
#include "sddesim/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace sddesim {

namespace {

// Sign convention with sgn(0) = +1; pinned by tests.
double sgn_plus(double v) { return v < 0.0 ? -1.0 : 1.0; }

void require_finite(const Eigen::Ref<const Eigen::MatrixXd>& value, const char* coefficient,
                    const std::string& model, double t) {
  if (!value.allFinite()) {
    std::ostringstream msg;
    msg << coefficient << " of model '" << model << "' is non-finite at t=" << t;
    throw ModelEvalError(msg.str());
  }
}

}  // namespace

void eval_coefficients(const ModelSpec& model, double t, const SegmentView& seg,
                       CoefficientWorkspace& ws) {
  const int d = model.dim;
  if (seg.dim != d) throw RangeError("segment dimension does not match model");

  if (model.delay_drift) {
    model.delay_drift(t, seg, ws.delay_drift);
    require_finite(ws.delay_drift, "delay drift B", model.name, t);
  } else {
    ws.delay_drift.setZero();
  }

  if (model.point_drift) {
    model.point_drift(t, seg.head(), ws.point_drift);
    require_finite(ws.point_drift, "drift b", model.name, t);
    bool clamped = false;
    for (int i = 0; i < d; ++i) {
      if (std::abs(ws.point_drift[i]) > model.drift_cap) {
        ws.point_drift[i] = std::copysign(model.drift_cap, ws.point_drift[i]);
        clamped = true;
      }
    }
    if (clamped) ++ws.clamp_count;
  } else {
    ws.point_drift.setZero();
  }

  if (model.delay_diffusion) {
    model.delay_diffusion(t, seg, ws.diffusion);
    require_finite(ws.diffusion, "diffusion sigma", model.name, t);
  } else if (model.diffusion) {
    model.diffusion(t, seg.head(), ws.diffusion);
    require_finite(ws.diffusion, "diffusion sigma", model.name, t);
  } else {
    ws.diffusion.setIdentity();
  }
}

namespace {

struct SampleDraw {
  double t = 0.0;
  Segment x;
  Segment y;
};

// Random walk segments over a log-uniform range of magnitudes, so the
// sampled region covers both small and large states.
SampleDraw draw_sample(const NoiseStream& stream, std::uint64_t index, double delay, double dt,
                       int dim) {
  std::uint64_t cursor = index * 4096;
  const auto next = [&] { return stream.gaussian(cursor++); };

  SampleDraw out;
  out.t = std::abs(next()) * 2.0 * delay;
  const int steps = TimeGrid(delay, 0.0, dt).delay_steps();
  const double scale = std::pow(10.0, -1.0 + 1.5 * std::abs(next()));
  std::vector<double> vx(static_cast<std::size_t>(steps + 1) * dim);
  std::vector<double> vy(vx.size());
  for (int c = 0; c < dim; ++c) {
    vx[static_cast<std::size_t>(c)] = scale * next();
    vy[static_cast<std::size_t>(c)] = scale * next();
  }
  for (int node = 1; node <= steps; ++node) {
    for (int c = 0; c < dim; ++c) {
      const auto at = [&](std::vector<double>& v, int n) -> double& {
        return v[static_cast<std::size_t>(n) * dim + c];
      };
      at(vx, node) = at(vx, node - 1) + scale * std::sqrt(dt) * next();
      at(vy, node) = at(vy, node - 1) + scale * std::sqrt(dt) * next();
    }
  }
  out.x = Segment(delay, dt, dim, std::move(vx));
  out.y = Segment(delay, dt, dim, std::move(vy));
  return out;
}

std::string describe_point(double t, const SegmentView& seg) {
  std::ostringstream s;
  s << "t=" << t << " head=(";
  for (int c = 0; c < seg.dim; ++c) s << (c ? "," : "") << seg.head()[c];
  s << ") sup=" << sup_norm(seg);
  return s.str();
}

}  // namespace

ConditionReport validate_conditions(const ModelSpec& model, double delay, double dt,
                                    std::size_t samples, std::uint64_t seed) {
  if (samples < 1) throw InputError("condition validation needs at least one sample");
  ConditionReport report;
  report.model = model.name;
  report.samples = samples;

  ConditionCheck exponent{"exponent-gate d/p+2/q<1", model.profile.exponent_gate, true, true, 0.0, ""};
  if (model.exponent_p && model.exponent_q) {
    const double p = *model.exponent_p;
    const double q = *model.exponent_q;
    exponent.witnessed_constant = model.dim / p + 2.0 / q;
    exponent.passed = p > 1.0 && q > 1.0 && exponent.witnessed_constant < 1.0;
    if (!exponent.passed) exponent.witness = "declared exponents p,q";
  } else {
    exponent.checked = false;
  }
  report.checks.push_back(exponent);

  ConditionCheck ellipticity{"sigma ellipticity", model.profile.sigma_bounds, true, true, 0.0, ""};
  ConditionCheck sigma_lip{"sigma Lipschitz", model.profile.sigma_lipschitz, true, true, 0.0, ""};
  ConditionCheck growth_bound{"delay-drift growth bound", model.profile.delay_growth, true, true, 0.0, ""};
  ConditionCheck delay_lip{"delay-drift Lipschitz", model.profile.delay_lipschitz, true, true, 0.0, ""};
  if (!model.delay_lipschitz) delay_lip.checked = false;

  if (model.sigma_bound < 1.0) {
    ellipticity.passed = false;
    ellipticity.witness = "declared sigma_bound < 1 breaks the one-constant convention";
  }

  NoiseStream stream(seed, 0x5eedu);
  CoefficientWorkspace wx(model.dim);
  CoefficientWorkspace wy(model.dim);

  for (std::size_t i = 0; i < samples; ++i) {
    const SampleDraw sample = draw_sample(stream, i, delay, dt, model.dim);
    eval_coefficients(model, sample.t, sample.x, wx);
    eval_coefficients(model, sample.t, sample.y, wy);

    // sigma sigma^T eigenvalue bounds against the declared constant.
    Eigen::SelfAdjointEigenSolver<Mat> eig(wx.diffusion * wx.diffusion.transpose());
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    const double witnessed = std::max(hi, lo > 0.0 ? 1.0 / lo : std::numeric_limits<double>::infinity());
    ellipticity.witnessed_constant = std::max(ellipticity.witnessed_constant, witnessed);
    if (ellipticity.passed &&
        (lo < 1.0 / model.sigma_bound * (1.0 - 1e-9) || hi > model.sigma_bound * (1.0 + 1e-9))) {
      ellipticity.passed = false;
      ellipticity.witness = describe_point(sample.t, sample.x);
    }

    // Hilbert-Schmidt Lipschitz ratio of sigma between the two heads.
    const double head_gap = (sample.x.head() - sample.y.head()).norm();
    if (head_gap > 1e-12 && !model.delay_diffusion) {
      const double ratio = (wx.diffusion - wy.diffusion).norm() / head_gap;
      sigma_lip.witnessed_constant = std::max(sigma_lip.witnessed_constant, ratio);
      if (sigma_lip.passed && ratio > model.sigma_bound * (1.0 + 1e-9)) {
        sigma_lip.passed = false;
        sigma_lip.witness = describe_point(sample.t, sample.x);
      }
    }

    // |B| against the declared growth function.
    if (model.has_delay_drift() && model.growth) {
      const double bound = model.growth(sup_norm(sample.x));
      const double magnitude = wx.delay_drift.norm();
      growth_bound.witnessed_constant = std::max(growth_bound.witnessed_constant, magnitude);
      if (growth_bound.passed && magnitude > bound * (1.0 + 1e-9) + 1e-12) {
        growth_bound.passed = false;
        growth_bound.witness = describe_point(sample.t, sample.x);
      }
    }

    if (model.delay_lipschitz) {
      const double seg_gap = sup_distance(sample.x, sample.y);
      if (seg_gap > 1e-12) {
        const double ratio = (wx.delay_drift - wy.delay_drift).norm() / seg_gap;
        delay_lip.witnessed_constant = std::max(delay_lip.witnessed_constant, ratio);
        if (delay_lip.passed && ratio > *model.delay_lipschitz * (1.0 + 1e-9)) {
          delay_lip.passed = false;
          delay_lip.witness = describe_point(sample.t, sample.x);
        }
      }
    }
  }

  // Decay of growth(R)/R over a geometric grid; a flat positive ratio means
  // the drift is not strictly sublinear.
  ConditionCheck sublinear{"delay-drift sublinearity", model.profile.delay_sublinear, true, true, 0.0, ""};
  if (model.growth) {
    double first = -1.0;
    double last = 0.0;
    double previous = std::numeric_limits<double>::infinity();
    bool nonincreasing = true;
    for (int k = -4; k <= 20; ++k) {
      const double radius = std::pow(2.0, k);
      const double ratio = model.growth(radius) / radius;
      if (first < 0.0) first = ratio;
      if (ratio > previous * (1.0 + 1e-9)) nonincreasing = false;
      previous = ratio;
      last = ratio;
    }
    sublinear.witnessed_constant = last;
    sublinear.passed = nonincreasing && (first == 0.0 || last <= 0.01 * first);
    if (!sublinear.passed) sublinear.witness = "growth(R)/R stalls on the geometric R grid";
  } else {
    sublinear.checked = model.has_delay_drift() ? false : true;  // no B: trivially sublinear
  }
  report.checks.push_back(ellipticity);
  report.checks.push_back(sigma_lip);
  report.checks.push_back(growth_bound);
  report.checks.push_back(sublinear);

  ConditionCheck continuity{"delay-drift continuity", model.profile.delay_continuity, false, true, 0.0, ""};
  report.checks.push_back(continuity);
  report.checks.push_back(delay_lip);
  return report;
}

double sublinear_decomposition(const ModelSpec& model, double alpha, double r_max) {
  if (!model.growth) throw CapabilityError("model '" + model.name + "' declares no growth function");
  if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
  double best = model.growth(0.0);
  for (int k = -20; k <= 60; ++k) {
    const double radius = std::pow(2.0, k);
    if (radius > r_max) break;
    best = std::max(best, model.growth(radius) - alpha * radius);
  }
  return best;
}

namespace catalog {

namespace {

double pick(const std::function<double(const std::string&, double)>& param, const std::string& key,
            double fallback) {
  return param ? param(key, fallback) : fallback;
}

ModelSpec make_base(const std::string& name,
                    const std::function<double(const std::string&, double)>& param) {
  ModelSpec m;
  m.name = name;

  if (name == "brownian") {
    m.dim = static_cast<int>(pick(param, "dim", 1.0));
    m.profile.delay_lipschitz = true;
    m.delay_lipschitz = 0.0;
    m.growth = [](double) { return 0.0; };
    return m;
  }

  if (name == "constant-drift") {
    const double c = pick(param, "c", 1.0);
    m.point_drift = [c](double, const Eigen::Ref<const Vec>&, Eigen::Ref<Vec> out) {
      out.setConstant(c);
    };
    m.profile.delay_lipschitz = true;
    m.delay_lipschitz = 0.0;
    m.growth = [](double) { return 0.0; };
    return m;
  }

  if (name == "linear-delay") {
    const double a = pick(param, "a", -1.0);
    m.delay_drift = [a](double, const SegmentView& seg, Eigen::Ref<Vec> out) {
      out = a * seg.node_value(0);
    };
    m.growth = [a](double radius) { return std::abs(a) * radius; };
    m.profile.delay_sublinear = false;  // growth(R)/R is constant
    m.profile.delay_lipschitz = true;
    m.delay_lipschitz = std::abs(a);
    m.pure_delay = true;
    return m;
  }

  if (name == "ou") {
    const double theta = pick(param, "theta", 1.0);
    m.point_drift = [theta](double, const Eigen::Ref<const Vec>& y, Eigen::Ref<Vec> out) {
      out = -theta * y;
    };
    m.profile.delay_lipschitz = true;
    m.delay_lipschitz = 0.0;
    m.growth = [](double) { return 0.0; };
    return m;
  }

  if (name == "sgn-delay-drift") {
    m.delay_drift = [](double, const SegmentView& seg, Eigen::Ref<Vec> out) {
      out.setConstant(sgn_plus(seg.node_value(0)[0]));
    };
    m.growth = [](double) { return 1.0; };
    m.profile.delay_continuity = false;  // the discontinuity is the point
    m.pure_delay = true;
    return m;
  }

  if (name == "sgn-delay-diffusion") {
    m.delay_diffusion = [](double, const SegmentView& seg, Eigen::Ref<Mat> out) {
      out.setConstant(sgn_plus(seg.node_value(0)[0]));
    };
    m.profile.sigma_lipschitz = false;
    m.profile.delay_lipschitz = true;
    m.delay_lipschitz = 0.0;
    m.growth = [](double) { return 0.0; };
    m.pure_delay = true;
    return m;
  }

  if (name == "power-singularity") {
    const double beta = pick(param, "beta", 0.2);
    m.exponent_p = pick(param, "p", 4.0);
    m.exponent_q = pick(param, "q", 4.0);
    m.point_drift = [beta](double, const Eigen::Ref<const Vec>& y, Eigen::Ref<Vec> out) {
      const double r = y.norm();
      out.setZero();
      if (r <= 1.0) out[0] = std::pow(std::max(r, 1e-300), -beta);
    };
    m.profile.exponent_gate = true;
    m.profile.delay_lipschitz = true;
    m.delay_lipschitz = 0.0;
    m.growth = [](double) { return 0.0; };
    return m;
  }

  throw ConfigError("unknown catalog model '" + name + "'");
}

}  // namespace

ModelSpec make(const std::string& name,
               const std::function<double(const std::string&, double)>& param) {
  ModelSpec m = make_base(name, param);
  // Optional uniform diffusion scale sigma * I; sigma = 1e-8 turns a
  // deterministic-drift run into a near-ODE without a second code path.
  const double scale = pick(param, "sigma", 1.0);
  if (scale != 1.0) {
    if (m.has_delay_diffusion()) {
      throw ConfigError("model '" + name + "' has a lag-dependent diffusion; 'sigma' not applicable");
    }
    if (!(scale > 0.0)) throw ConfigError("'sigma' must be positive");
    m.diffusion = [scale](double, const Eigen::Ref<const Vec>&, Eigen::Ref<Mat> out) {
      out.setIdentity();
      out *= scale;
    };
    m.sigma_bound = std::max({1.0, scale * scale, 1.0 / (scale * scale)});
  }
  return m;
}

ModelSpec make(const std::string& name) { return make(name, nullptr); }

std::vector<std::string> names() {
  return {"brownian",        "constant-drift",      "linear-delay",     "ou",
          "sgn-delay-drift", "sgn-delay-diffusion", "power-singularity"};
}

}  // namespace catalog

}  // namespace sddesim
