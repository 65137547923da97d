#include "msstr/problems.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <map>
#include <random>
#include <stdexcept>

namespace msstr {

namespace {

using Fn = std::function<double(const Vec&)>;
using Gn = std::function<Vec(const Vec&)>;

int round_up_multiple(int n, int k) { return ((n + k - 1) / k) * k; }

Problem make(std::string name, int n, Fn f, Gn g, Vec x0,
             std::optional<double> fmin = std::nullopt) {
  Problem p;
  p.name = std::move(name);
  p.dim = n;
  p.eval_f = std::move(f);
  p.eval_g = std::move(g);
  p.x0 = std::move(x0);
  p.known_fmin = fmin;
  return p;
}

Problem arwhead(int n) {
  auto f = [n](const Vec& x) {
    const double xl = x(n - 1);
    double s = 0.0;
    for (int i = 0; i < n - 1; ++i) {
      const double t = x(i) * x(i) + xl * xl;
      s += t * t - 4.0 * x(i) + 3.0;
    }
    return s;
  };
  auto g = [n](const Vec& x) {
    const double xl = x(n - 1);
    Vec grad = Vec::Zero(n);
    for (int i = 0; i < n - 1; ++i) {
      const double t = x(i) * x(i) + xl * xl;
      grad(i) = 4.0 * x(i) * t - 4.0;
      grad(n - 1) += 4.0 * xl * t;
    }
    return grad;
  };
  return make("ARWHEAD", n, f, g, Vec::Ones(n), 0.0);
}

Problem broydn7d(int n) {
  n = round_up_multiple(std::max(n, 4), 2);
  const int h = n / 2;
  auto resid = [n](const Vec& x, int i) {
    double u = 1.0 + (3.0 - 2.0 * x(i)) * x(i);
    if (i > 0) u -= x(i - 1);
    if (i < n - 1) u -= 2.0 * x(i + 1);
    return u;
  };
  auto f = [n, h, resid](const Vec& x) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += std::pow(std::abs(resid(x, i)), 7.0 / 3.0);
    for (int i = 0; i < h; ++i)
      s += std::pow(std::abs(x(i) + x(i + h)), 7.0 / 3.0);
    return s;
  };
  auto g = [n, h, resid](const Vec& x) {
    Vec grad = Vec::Zero(n);
    auto dpow = [](double u) {
      return (7.0 / 3.0) * u * std::pow(std::abs(u), 1.0 / 3.0);
    };
    for (int i = 0; i < n; ++i) {
      const double w = dpow(resid(x, i));
      grad(i) += w * (3.0 - 4.0 * x(i));
      if (i > 0) grad(i - 1) -= w;
      if (i < n - 1) grad(i + 1) -= 2.0 * w;
    }
    for (int i = 0; i < h; ++i) {
      const double w = dpow(x(i) + x(i + h));
      grad(i) += w;
      grad(i + h) += w;
    }
    return grad;
  };
  return make("BROYDN7D", n, f, g, Vec::Ones(n));
}

Problem cosine(int n) {
  auto f = [n](const Vec& x) {
    double s = 0.0;
    for (int i = 0; i < n - 1; ++i) s += std::cos(x(i) * x(i) - 0.5 * x(i + 1));
    return s;
  };
  auto g = [n](const Vec& x) {
    Vec grad = Vec::Zero(n);
    for (int i = 0; i < n - 1; ++i) {
      const double sn = std::sin(x(i) * x(i) - 0.5 * x(i + 1));
      grad(i) -= 2.0 * x(i) * sn;
      grad(i + 1) += 0.5 * sn;
    }
    return grad;
  };
  return make("COSINE", n, f, g, Vec::Ones(n));
}

Problem cragglvy(int n) {
  n = round_up_multiple(std::max(n, 4), 2);
  auto f = [n](const Vec& x) {
    double s = 0.0;
    for (int i = 0; 2 * i + 3 < n; ++i) {
      const double a = x(2 * i), b = x(2 * i + 1), c = x(2 * i + 2),
                   d = x(2 * i + 3);
      const double t1 = std::exp(a) - b;
      const double t2 = b - c;
      const double t3 = std::tan(c - d) + c - d;
      s += std::pow(t1, 4) + 100.0 * std::pow(t2, 6) + std::pow(t3, 4) +
           std::pow(a, 8) + (d - 1.0) * (d - 1.0);
    }
    return s;
  };
  auto g = [n](const Vec& x) {
    Vec grad = Vec::Zero(n);
    for (int i = 0; 2 * i + 3 < n; ++i) {
      const int ja = 2 * i, jb = 2 * i + 1, jc = 2 * i + 2, jd = 2 * i + 3;
      const double a = x(ja), b = x(jb), c = x(jc), d = x(jd);
      const double t1 = std::exp(a) - b;
      const double t2 = b - c;
      const double cd = c - d;
      const double sec2 = 1.0 / (std::cos(cd) * std::cos(cd));
      const double t3 = std::tan(cd) + cd;
      grad(ja) += 4.0 * std::pow(t1, 3) * std::exp(a) + 8.0 * std::pow(a, 7);
      grad(jb) += -4.0 * std::pow(t1, 3) + 600.0 * std::pow(t2, 5);
      grad(jc) += -600.0 * std::pow(t2, 5) + 4.0 * std::pow(t3, 3) * (sec2 + 1.0);
      grad(jd) += -4.0 * std::pow(t3, 3) * (sec2 + 1.0) + 2.0 * (d - 1.0);
    }
    return grad;
  };
  Vec x0 = Vec::Constant(n, 2.0);
  x0(0) = 1.0;
  return make("CRAGGLVY", n, f, g, x0);
}

Problem curly(int n, int k, const std::string& name) {
  auto f = [n, k](const Vec& x) {
    double s = 0.0;
    double q = 0.0;
    // running window sum: q_i = x_i + ... + x_{min(i+k, n-1)}
    for (int j = 0; j <= std::min(k, n - 1); ++j) q += x(j);
    for (int i = 0; i < n; ++i) {
      s += q * q * q * q - 20.0 * q * q - 0.1 * q;
      q -= x(i);
      if (i + k + 1 < n) q += x(i + k + 1);
    }
    return s;
  };
  auto g = [n, k](const Vec& x) {
    Vec grad = Vec::Zero(n);
    Vec diff = Vec::Zero(n + 1);
    double q = 0.0;
    for (int j = 0; j <= std::min(k, n - 1); ++j) q += x(j);
    for (int i = 0; i < n; ++i) {
      const double w = 4.0 * q * q * q - 40.0 * q - 0.1;
      diff(i) += w;
      diff(std::min(i + k, n - 1) + 1) -= w;
      q -= x(i);
      if (i + k + 1 < n) q += x(i + k + 1);
    }
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      acc += diff(i);
      grad(i) = acc;
    }
    return grad;
  };
  Vec x0(n);
  for (int i = 0; i < n; ++i) x0(i) = 1e-4 * (i + 1) / (n + 1);
  return make(name, n, f, g, x0);
}

struct DixParams {
  double alpha, beta, gamma, delta;
  int k1, k2, k3, k4;
};

Problem dixmaan(int n, const DixParams& p, const std::string& name) {
  n = round_up_multiple(std::max(n, 3), 3);
  const int m = n / 3;
  auto pw = [n](int i1, int k) {
    return k == 0 ? 1.0 : std::pow(static_cast<double>(i1) / n, k);
  };
  auto f = [n, m, p, pw](const Vec& x) {
    double s = 1.0;
    for (int i = 0; i < n; ++i) s += p.alpha * x(i) * x(i) * pw(i + 1, p.k1);
    for (int i = 0; i < n - 1; ++i) {
      const double t = x(i + 1) + x(i + 1) * x(i + 1);
      s += p.beta * x(i) * x(i) * t * t * pw(i + 1, p.k2);
    }
    for (int i = 0; i < 2 * m; ++i) {
      s += p.gamma * x(i) * x(i) * std::pow(x(i + m), 4) * pw(i + 1, p.k3);
    }
    for (int i = 0; i < m; ++i) {
      s += p.delta * x(i) * x(i + 2 * m) * pw(i + 1, p.k4);
    }
    return s;
  };
  auto g = [n, m, p, pw](const Vec& x) {
    Vec grad = Vec::Zero(n);
    for (int i = 0; i < n; ++i)
      grad(i) += 2.0 * p.alpha * x(i) * pw(i + 1, p.k1);
    for (int i = 0; i < n - 1; ++i) {
      const double c = pw(i + 1, p.k2);
      const double t = x(i + 1) + x(i + 1) * x(i + 1);
      grad(i) += 2.0 * p.beta * x(i) * t * t * c;
      grad(i + 1) += 2.0 * p.beta * x(i) * x(i) * t * (1.0 + 2.0 * x(i + 1)) * c;
    }
    for (int i = 0; i < 2 * m; ++i) {
      const double c = pw(i + 1, p.k3);
      grad(i) += 2.0 * p.gamma * x(i) * std::pow(x(i + m), 4) * c;
      grad(i + m) += 4.0 * p.gamma * x(i) * x(i) * std::pow(x(i + m), 3) * c;
    }
    for (int i = 0; i < m; ++i) {
      const double c = pw(i + 1, p.k4);
      grad(i) += p.delta * x(i + 2 * m) * c;
      grad(i + 2 * m) += p.delta * x(i) * c;
    }
    return grad;
  };
  return make(name, n, f, g, Vec::Constant(n, 2.0), 1.0);
}

Problem dqrtic(int n, const std::string& name) {
  auto f = [n](const Vec& x) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += std::pow(x(i) - (i + 1), 4);
    return s;
  };
  auto g = [n](const Vec& x) {
    Vec grad(n);
    for (int i = 0; i < n; ++i) grad(i) = 4.0 * std::pow(x(i) - (i + 1), 3);
    return grad;
  };
  return make(name, n, f, g, Vec::Constant(n, 2.0), 0.0);
}

Problem edensch(int n) {
  auto f = [n](const Vec& x) {
    double s = 16.0;
    for (int i = 0; i < n - 1; ++i) {
      const double t = x(i + 1) * (x(i) - 2.0);
      s += std::pow(x(i) - 2.0, 4) + t * t + (x(i + 1) + 1.0) * (x(i + 1) + 1.0);
    }
    return s;
  };
  auto g = [n](const Vec& x) {
    Vec grad = Vec::Zero(n);
    for (int i = 0; i < n - 1; ++i) {
      const double t = x(i + 1) * (x(i) - 2.0);
      grad(i) += 4.0 * std::pow(x(i) - 2.0, 3) + 2.0 * t * x(i + 1);
      grad(i + 1) += 2.0 * t * (x(i) - 2.0) + 2.0 * (x(i + 1) + 1.0);
    }
    return grad;
  };
  return make("EDENSCH", n, f, g, Vec::Zero(n));
}

Problem eg2(int n) {
  auto f = [n](const Vec& x) {
    double s = 0.5 * std::sin(x(n - 1) * x(n - 1));
    for (int i = 0; i < n - 1; ++i) s += std::sin(x(0) + x(i) * x(i) - 1.0);
    return s;
  };
  auto g = [n](const Vec& x) {
    Vec grad = Vec::Zero(n);
    for (int i = 0; i < n - 1; ++i) {
      const double c = std::cos(x(0) + x(i) * x(i) - 1.0);
      grad(0) += c;
      grad(i) += 2.0 * x(i) * c;
    }
    grad(n - 1) += x(n - 1) * std::cos(x(n - 1) * x(n - 1));
    return grad;
  };
  return make("EG2", n, f, g, Vec::Zero(n));
}

Problem engval1(int n) {
  auto f = [n](const Vec& x) {
    double s = 0.0;
    for (int i = 0; i < n - 1; ++i) {
      const double t = x(i) * x(i) + x(i + 1) * x(i + 1);
      s += t * t - 4.0 * x(i) + 3.0;
    }
    return s;
  };
  auto g = [n](const Vec& x) {
    Vec grad = Vec::Zero(n);
    for (int i = 0; i < n - 1; ++i) {
      const double t = x(i) * x(i) + x(i + 1) * x(i + 1);
      grad(i) += 4.0 * x(i) * t - 4.0;
      grad(i + 1) += 4.0 * x(i + 1) * t;
    }
    return grad;
  };
  return make("ENGVAL1", n, f, g, Vec::Constant(n, 2.0));
}

Problem fletchcr(int n) {
  auto f = [n](const Vec& x) {
    double s = 0.0;
    for (int i = 0; i < n - 1; ++i) {
      const double t = x(i + 1) - x(i) + 1.0 - x(i) * x(i);
      s += 100.0 * t * t;
    }
    return s;
  };
  auto g = [n](const Vec& x) {
    Vec grad = Vec::Zero(n);
    for (int i = 0; i < n - 1; ++i) {
      const double t = x(i + 1) - x(i) + 1.0 - x(i) * x(i);
      grad(i + 1) += 200.0 * t;
      grad(i) += 200.0 * t * (-1.0 - 2.0 * x(i));
    }
    return grad;
  };
  return make("FLETCHCR", n, f, g, Vec::Zero(n), 0.0);
}

Problem genhumps(int n) {
  auto f = [n](const Vec& x) {
    double s = 0.0;
    for (int i = 0; i < n - 1; ++i) {
      const double a = std::sin(2.0 * x(i)), b = std::sin(2.0 * x(i + 1));
      s += a * a * b * b + 0.05 * (x(i) * x(i) + x(i + 1) * x(i + 1));
    }
    return s;
  };
  auto g = [n](const Vec& x) {
    Vec grad = Vec::Zero(n);
    for (int i = 0; i < n - 1; ++i) {
      const double a = std::sin(2.0 * x(i)), b = std::sin(2.0 * x(i + 1));
      grad(i) += 2.0 * std::sin(4.0 * x(i)) * b * b + 0.1 * x(i);
      grad(i + 1) += a * a * 2.0 * std::sin(4.0 * x(i + 1)) + 0.1 * x(i + 1);
    }
    return grad;
  };
  Vec x0 = Vec::Constant(n, 506.2);
  x0(0) = -506.0;
  return make("GENHUMPS", n, f, g, x0, 0.0);
}

Problem indefm(int n) {
  auto f = [n](const Vec& x) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += 100.0 * std::sin(0.01 * x(i));
    for (int i = 1; i < n - 1; ++i)
      s += 0.5 * std::cos(2.0 * x(i) - x(n - 1) - x(0));
    return s;
  };
  auto g = [n](const Vec& x) {
    Vec grad = Vec::Zero(n);
    for (int i = 0; i < n; ++i) grad(i) += std::cos(0.01 * x(i));
    for (int i = 1; i < n - 1; ++i) {
      const double sn = std::sin(2.0 * x(i) - x(n - 1) - x(0));
      grad(i) -= sn;
      grad(n - 1) += 0.5 * sn;
      grad(0) += 0.5 * sn;
    }
    return grad;
  };
  Vec x0(n);
  for (int i = 0; i < n; ++i) x0(i) = static_cast<double>(i + 1) / (n + 1);
  return make("INDEFM", n, f, g, x0);
}

Problem noncvx(int n, int ja, int jb, int ka, int kb, const std::string& name) {
  // term i uses u = x_i + x_j + x_k with 1-based j = mod(ja*i - jb, n) + 1,
  // k = mod(ka*i - kb, n) + 1
  auto idx = [n](long a, long b, long i1) {
    return static_cast<int>((a * i1 - b) % n);
  };
  auto f = [n, ja, jb, ka, kb, idx](const Vec& x) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      const double u = x(i) + x(idx(ja, jb, i + 1)) + x(idx(ka, kb, i + 1));
      s += u * u + 4.0 * std::cos(u);
    }
    return s;
  };
  auto g = [n, ja, jb, ka, kb, idx](const Vec& x) {
    Vec grad = Vec::Zero(n);
    for (int i = 0; i < n; ++i) {
      const int j = idx(ja, jb, i + 1), k = idx(ka, kb, i + 1);
      const double u = x(i) + x(j) + x(k);
      const double w = 2.0 * u - 4.0 * std::sin(u);
      grad(i) += w;
      grad(j) += w;
      grad(k) += w;
    }
    return grad;
  };
  Vec x0(n);
  for (int i = 0; i < n; ++i) x0(i) = i + 1;
  return make(name, n, f, g, x0);
}

Problem nondquar(int n) {
  auto f = [n](const Vec& x) {
    double s = (x(0) - x(1)) * (x(0) - x(1)) +
               (x(n - 2) + x(n - 1)) * (x(n - 2) + x(n - 1));
    for (int i = 0; i < n - 2; ++i)
      s += std::pow(x(i) + x(i + 1) + x(n - 1), 4);
    return s;
  };
  auto g = [n](const Vec& x) {
    Vec grad = Vec::Zero(n);
    grad(0) += 2.0 * (x(0) - x(1));
    grad(1) -= 2.0 * (x(0) - x(1));
    grad(n - 2) += 2.0 * (x(n - 2) + x(n - 1));
    grad(n - 1) += 2.0 * (x(n - 2) + x(n - 1));
    for (int i = 0; i < n - 2; ++i) {
      const double w = 4.0 * std::pow(x(i) + x(i + 1) + x(n - 1), 3);
      grad(i) += w;
      grad(i + 1) += w;
      grad(n - 1) += w;
    }
    return grad;
  };
  Vec x0(n);
  for (int i = 0; i < n; ++i) x0(i) = (i % 2 == 0) ? 1.0 : -1.0;
  return make("NONDQUAR", n, f, g, x0, 0.0);
}

Problem powellsg(int n) {
  n = round_up_multiple(std::max(n, 4), 4);
  auto f = [n](const Vec& x) {
    double s = 0.0;
    for (int j = 0; j < n; j += 4) {
      const double a = x(j) + 10.0 * x(j + 1);
      const double b = x(j + 2) - x(j + 3);
      const double c = x(j + 1) - 2.0 * x(j + 2);
      const double d = x(j) - x(j + 3);
      s += a * a + 5.0 * b * b + std::pow(c, 4) + 10.0 * std::pow(d, 4);
    }
    return s;
  };
  auto g = [n](const Vec& x) {
    Vec grad = Vec::Zero(n);
    for (int j = 0; j < n; j += 4) {
      const double a = x(j) + 10.0 * x(j + 1);
      const double b = x(j + 2) - x(j + 3);
      const double c = x(j + 1) - 2.0 * x(j + 2);
      const double d = x(j) - x(j + 3);
      grad(j) += 2.0 * a + 40.0 * std::pow(d, 3);
      grad(j + 1) += 20.0 * a + 4.0 * std::pow(c, 3);
      grad(j + 2) += 10.0 * b - 8.0 * std::pow(c, 3);
      grad(j + 3) += -10.0 * b - 40.0 * std::pow(d, 3);
    }
    return grad;
  };
  Vec x0(n);
  for (int j = 0; j < n; j += 4) {
    x0(j) = 3.0;
    x0(j + 1) = -1.0;
    x0(j + 2) = 0.0;
    x0(j + 3) = 1.0;
  }
  return make("POWELLSG", n, f, g, x0, 0.0);
}

Problem power(int n) {
  auto f = [n](const Vec& x) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      const double t = (i + 1) * x(i);
      s += t * t;
    }
    return s;
  };
  auto g = [n](const Vec& x) {
    Vec grad(n);
    for (int i = 0; i < n; ++i)
      grad(i) = 2.0 * static_cast<double>(i + 1) * (i + 1) * x(i);
    return grad;
  };
  return make("POWER", n, f, g, Vec::Ones(n), 0.0);
}

Problem schmvett(int n) {
  constexpr double kPi = 3.14159265358979323846;
  auto f = [n](const Vec& x) {
    double s = 0.0;
    for (int i = 0; i < n - 2; ++i) {
      const double t1 = x(i) - x(i + 1);
      const double r = (x(i) + x(i + 2)) / x(i + 1) - 2.0;
      s -= 1.0 / (1.0 + t1 * t1) +
           std::sin(0.5 * (kPi * x(i + 1) + x(i + 2))) + std::exp(-r * r);
    }
    return s;
  };
  auto g = [n](const Vec& x) {
    Vec grad = Vec::Zero(n);
    for (int i = 0; i < n - 2; ++i) {
      const double t1 = x(i) - x(i + 1);
      const double d1 = 2.0 * t1 / ((1.0 + t1 * t1) * (1.0 + t1 * t1));
      grad(i) += d1;
      grad(i + 1) -= d1;
      const double c = std::cos(0.5 * (kPi * x(i + 1) + x(i + 2)));
      grad(i + 1) -= 0.5 * kPi * c;
      grad(i + 2) -= 0.5 * c;
      const double r = (x(i) + x(i + 2)) / x(i + 1) - 2.0;
      const double w = 2.0 * r * std::exp(-r * r);
      grad(i) += w / x(i + 1);
      grad(i + 2) += w / x(i + 1);
      grad(i + 1) -= w * (x(i) + x(i + 2)) / (x(i + 1) * x(i + 1));
    }
    return grad;
  };
  return make("SCHMVETT", n, f, g, Vec::Constant(n, 0.5));
}

Problem sinquad(int n) {
  auto f = [n](const Vec& x) {
    double s = std::pow(x(0) - 1.0, 4);
    const double last = x(n - 1) * x(n - 1) - x(0) * x(0);
    s += last * last;
    for (int i = 1; i < n - 1; ++i) {
      const double t = std::sin(x(i) - x(n - 1)) - x(0) * x(0) + x(i) * x(i);
      s += t * t;
    }
    return s;
  };
  auto g = [n](const Vec& x) {
    Vec grad = Vec::Zero(n);
    grad(0) += 4.0 * std::pow(x(0) - 1.0, 3);
    const double last = x(n - 1) * x(n - 1) - x(0) * x(0);
    grad(n - 1) += 4.0 * last * x(n - 1);
    grad(0) -= 4.0 * last * x(0);
    for (int i = 1; i < n - 1; ++i) {
      const double t = std::sin(x(i) - x(n - 1)) - x(0) * x(0) + x(i) * x(i);
      const double c = std::cos(x(i) - x(n - 1));
      grad(i) += 2.0 * t * (c + 2.0 * x(i));
      grad(n - 1) -= 2.0 * t * c;
      grad(0) -= 4.0 * t * x(0);
    }
    return grad;
  };
  return make("SINQUAD", n, f, g, Vec::Constant(n, 0.1));
}

// shared sparse index pattern: i plus mod(c*i - 1, n) + 1 for c in {2,3,5,7,11}
std::array<int, 5> sparse_links(int i1, int n) {
  static constexpr int kC[5] = {2, 3, 5, 7, 11};
  std::array<int, 5> out{};
  for (int t = 0; t < 5; ++t) {
    out[t] = static_cast<int>((static_cast<long>(kC[t]) * i1 - 1) % n);
  }
  return out;
}

Problem sparsine(int n) {
  auto f = [n](const Vec& x) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      double q = std::sin(x(i));
      for (int j : sparse_links(i + 1, n)) q += std::sin(x(j));
      s += 0.5 * (i + 1) * q * q;
    }
    return s;
  };
  auto g = [n](const Vec& x) {
    Vec grad = Vec::Zero(n);
    for (int i = 0; i < n; ++i) {
      double q = std::sin(x(i));
      const auto links = sparse_links(i + 1, n);
      for (int j : links) q += std::sin(x(j));
      const double w = (i + 1) * q;
      grad(i) += w * std::cos(x(i));
      for (int j : links) grad(j) += w * std::cos(x(j));
    }
    return grad;
  };
  return make("SPARSINE", n, f, g, Vec::Constant(n, 0.5));
}

Problem sparsqur(int n) {
  auto f = [n](const Vec& x) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      double q = x(i) * x(i);
      for (int j : sparse_links(i + 1, n)) q += x(j) * x(j);
      s += 0.125 * (i + 1) * q * q;
    }
    return s;
  };
  auto g = [n](const Vec& x) {
    Vec grad = Vec::Zero(n);
    for (int i = 0; i < n; ++i) {
      double q = x(i) * x(i);
      const auto links = sparse_links(i + 1, n);
      for (int j : links) q += x(j) * x(j);
      const double w = 0.5 * (i + 1) * q;
      grad(i) += w * x(i);
      for (int j : links) grad(j) += w * x(j);
    }
    return grad;
  };
  return make("SPARSQUR", n, f, g, Vec::Constant(n, 0.5), 0.0);
}

Problem tointgss(int n) {
  auto f = [n](const Vec& x) {
    const double a = 10.0 / (n + 2);
    double s = 0.0;
    for (int i = 0; i < n - 2; ++i) {
      const double t = x(i + 1) * x(i + 1);
      const double u = (x(i) - x(i + 2)) * (x(i) - x(i + 2));
      const double den = 0.1 + t;
      s += (a + t) * (2.0 - std::exp(-u / den));
    }
    return s;
  };
  auto g = [n](const Vec& x) {
    const double a = 10.0 / (n + 2);
    Vec grad = Vec::Zero(n);
    for (int i = 0; i < n - 2; ++i) {
      const double t = x(i + 1) * x(i + 1);
      const double diff = x(i) - x(i + 2);
      const double u = diff * diff;
      const double den = 0.1 + t;
      const double e = std::exp(-u / den);
      const double w = (a + t) * e * 2.0 * diff / den;
      grad(i) += w;
      grad(i + 2) -= w;
      grad(i + 1) += 2.0 * x(i + 1) * (2.0 - e) -
                     (a + t) * e * u * 2.0 * x(i + 1) / (den * den);
    }
    return grad;
  };
  return make("TOINTGSS", n, f, g, Vec::Constant(n, 3.0));
}

const std::map<std::string, std::function<Problem(int)>>& registry() {
  static const std::map<std::string, std::function<Problem(int)>> reg = [] {
    std::map<std::string, std::function<Problem(int)>> r;
    r["ARWHEAD"] = arwhead;
    r["BROYDN7D"] = broydn7d;
    r["COSINE"] = cosine;
    r["CRAGGLVY"] = cragglvy;
    r["CURLY10"] = [](int n) { return curly(n, 10, "CURLY10"); };
    r["CURLY20"] = [](int n) { return curly(n, 20, "CURLY20"); };
    r["CURLY30"] = [](int n) { return curly(n, 30, "CURLY30"); };
    const DixParams coeff_a{1.0, 0.0, 0.125, 0.125, 0, 0, 0, 0};
    const DixParams coeff_b{1.0, 0.0625, 0.0625, 0.0625, 0, 0, 0, 1};
    const DixParams coeff_c{1.0, 0.125, 0.125, 0.125, 0, 0, 0, 0};
    const DixParams coeff_d{1.0, 0.26, 0.26, 0.26, 0, 0, 0, 0};
    auto dix = [&r](const std::string& name, DixParams p) {
      r[name] = [p, name](int n) { return dixmaan(n, p, name); };
    };
    auto with_k = [](DixParams p, int k1, int k2, int k3, int k4) {
      p.k1 = k1; p.k2 = k2; p.k3 = k3; p.k4 = k4;
      return p;
    };
    dix("DIXMAANA", coeff_a);
    dix("DIXMAANB", coeff_b);
    dix("DIXMAANC", coeff_c);
    dix("DIXMAAND", coeff_d);
    dix("DIXMAANE", with_k(coeff_a, 1, 0, 0, 1));
    dix("DIXMAANF", with_k(coeff_b, 1, 0, 0, 1));
    dix("DIXMAANG", with_k(coeff_c, 1, 0, 0, 1));
    dix("DIXMAANH", with_k(coeff_d, 1, 0, 0, 1));
    dix("DIXMAANI", with_k(coeff_a, 2, 0, 0, 2));
    dix("DIXMAANJ", with_k(coeff_b, 2, 0, 0, 2));
    dix("DIXMAANK", with_k(coeff_c, 2, 0, 0, 2));
    dix("DIXMAANL", with_k(coeff_d, 2, 0, 0, 2));
    dix("DIXMAANM", with_k(coeff_a, 2, 1, 1, 2));
    dix("DIXMAANN", with_k(coeff_b, 2, 1, 1, 2));
    dix("DIXMAANO", with_k(coeff_c, 2, 1, 1, 2));
    dix("DIXMAANP", with_k(coeff_d, 2, 1, 1, 2));
    r["DQRTIC"] = [](int n) { return dqrtic(n, "DQRTIC"); };
    r["QUARTC"] = [](int n) { return dqrtic(n, "QUARTC"); };
    r["EDENSCH"] = edensch;
    r["EG2"] = eg2;
    r["ENGVAL1"] = engval1;
    r["FLETCHCR"] = fletchcr;
    r["GENHUMPS"] = genhumps;
    r["INDEFM"] = indefm;
    r["NONCVXU2"] = [](int n) { return noncvx(n, 3, 2, 7, 3, "NONCVXU2"); };
    r["NONCVXUN"] = [](int n) { return noncvx(n, 2, 1, 3, 1, "NONCVXUN"); };
    r["NONDQUAR"] = nondquar;
    r["POWELLSG"] = powellsg;
    r["POWER"] = power;
    r["SCHMVETT"] = schmvett;
    r["SINQUAD"] = sinquad;
    r["SPARSINE"] = sparsine;
    r["SPARSQUR"] = sparsqur;
    r["TOINTGSS"] = tointgss;
    return r;
  }();
  return reg;
}

}  // namespace

std::vector<std::string> catalog() {
  std::vector<std::string> names;
  names.reserve(registry().size());
  for (const auto& [name, _] : registry()) names.push_back(name);
  return names;
}

Problem make_problem(const std::string& name, int dim) {
  auto it = registry().find(name);
  if (it == registry().end()) {
    throw std::out_of_range("unknown problem: " + name);
  }
  return it->second(dim);
}

double check_gradient(const Problem& p, const Vec& x, double h) {
  const int n = p.dim;
  Vec g = p.eval_g(x);
  std::vector<int> coords;
  if (n <= 200) {
    coords.resize(n);
    for (int i = 0; i < n; ++i) coords[i] = i;
  } else {
    unsigned seed = 12345;
    if (const char* env = std::getenv("MSS_TR_SEED")) {
      seed = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
    }
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> dist(0, n - 1);
    for (int t = 0; t < 50; ++t) coords.push_back(dist(rng));
  }
  double max_err = 0.0;
  Vec xp = x;
  const double f0 = p.eval_f(x);
  // step floor balancing truncation against rounding of f at its own scale
  const double h_floor = std::cbrt(1e-19 * std::max(1.0, std::abs(f0)));
  for (int i : coords) {
    const double hi = std::max(h * (1.0 + std::abs(x(i))), h_floor);
    xp(i) = x(i) + hi;
    const double fp = p.eval_f(xp);
    xp(i) = x(i) - hi;
    const double fm = p.eval_f(xp);
    xp(i) = x(i);
    const double fd = (fp - fm) / (2.0 * hi);
    // The difference quotient cannot resolve gradient components below the
    // rounding level of f divided by the step, so that resolution limit
    // joins the usual terms in the relative-error denominator.
    const double resolution = std::abs(f0) * 4e-11 / hi;
    const double err =
        std::abs(g(i) - fd) /
        std::max({1.0, std::abs(g(i)), std::abs(fd), resolution});
    max_err = std::max(max_err, err);
  }
  return max_err;
}

}  // namespace msstr
