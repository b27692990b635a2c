#include "brpa/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "brpa/error.hpp"

namespace brpa {

namespace {

constexpr double kStrictGap = 4 * std::numeric_limits<double>::epsilon();

// Neumaier-compensated running sum.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;

  double peek(double x) const {
    const double t = sum + x;
    const double c = std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    return t + (comp + c);
  }
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
};

bool strictly_above(double next, double previous) {
  return next > previous * (1.0 + kStrictGap);
}

void check_nm(std::uint32_t n, std::uint32_t m) {
  require(n >= 1, "generator: n must be at least 1");
  require(m >= 1, "generator: m must be at least 1");
  require(std::uint64_t{n} * m < 0x7FFFFFFFull, "generator: m*n too large");
}

std::vector<double> normalized_rights(const ExponentialProcess& process,
                                      std::size_t chords) {
  require(process.count() == chords + 1,
          "exponential pairing: process must have chords+1 terms");
  const double total = process.prefix(chords + 1);
  std::vector<double> right(chords);
  for (std::size_t k = 1; k <= chords; ++k) right[k - 1] = process.prefix(k) / total;
  return right;
}

// Smallest 1-based i <= hi with right[i-1] >= x, given right[hi-1] >= x.
// Gallops from the position a uniform spacing would predict.
std::size_t locate(const std::vector<double>& right, double x, std::size_t hi) {
  const double scaled = std::ceil(x * static_cast<double>(right.size() + 1));
  std::size_t guess = scaled < 1.0 ? 1 : static_cast<std::size_t>(scaled);
  guess = std::min(guess, hi);
  std::size_t lo_idx;  // right[lo_idx-1] < x, or 0
  std::size_t hi_idx;  // right[hi_idx-1] >= x
  if (right[guess - 1] >= x) {
    hi_idx = guess;
    std::size_t step = 1;
    for (;;) {
      if (hi_idx <= step) {
        lo_idx = 0;
        break;
      }
      const std::size_t probe = hi_idx - step;
      if (right[probe - 1] < x) {
        lo_idx = probe;
        break;
      }
      hi_idx = probe;
      step *= 2;
    }
  } else {
    lo_idx = guess;
    std::size_t step = 1;
    for (;;) {
      const std::size_t probe = std::min(lo_idx + step, hi);
      if (right[probe - 1] >= x) {
        hi_idx = probe;
        break;
      }
      lo_idx = probe;
      step *= 2;
    }
  }
  // Invariant: answer in (lo_idx, hi_idx].
  while (hi_idx - lo_idx > 1) {
    const std::size_t mid = lo_idx + (hi_idx - lo_idx) / 2;
    if (right[mid - 1] >= x) {
      hi_idx = mid;
    } else {
      lo_idx = mid;
    }
  }
  return hi_idx;
}

struct LeftDraw {
  double left;
  std::size_t vertex;
};

// Draws the left end of chord k and the vertex containing it; a left end
// landing exactly on some right end is redrawn.
LeftDraw draw_left(const std::vector<double>& right, std::size_t k, Rng& rng) {
  for (;;) {
    const double u = rng.uniform();
    const double left = right[k - 1] * u * u;
    const std::size_t vertex = locate(right, left, k);
    if (right[vertex - 1] != left) return {left, vertex};
  }
}

}  // namespace

ExponentialProcess ExponentialProcess::from_increments(std::vector<double> w) {
  require(!w.empty(), "exponential process: need at least one term");
  ExponentialProcess p;
  p.W_.reserve(w.size() + 1);
  p.W_.push_back(0.0);
  CompensatedSum acc;
  for (double x : w) {
    require(x > 0.0 && std::isfinite(x),
            "exponential process: increments must be positive and finite");
    const double next = acc.peek(x);
    require(strictly_above(next, p.W_.back()),
            "exponential process: increment too small to raise the sum");
    acc.add(x);
    p.W_.push_back(next);
  }
  p.w_ = std::move(w);
  return p;
}

ExponentialProcess sample_exponential_process(std::size_t count, Rng& rng) {
  require(count >= 1, "exponential process: count must be at least 1");
  ExponentialProcess p;
  p.w_.reserve(count);
  p.W_.reserve(count + 1);
  p.W_.push_back(0.0);
  CompensatedSum acc;
  for (std::size_t i = 0; i < count; ++i) {
    double x;
    double next;
    do {
      x = rng.exponential();
      next = acc.peek(x);
    } while (!strictly_above(next, p.W_.back()));
    acc.add(x);
    p.w_.push_back(x);
    p.W_.push_back(next);
  }
  return p;
}

std::string_view method_name(GenMethod method) {
  switch (method) {
    case GenMethod::kSequential: return "seq";
    case GenMethod::kUniformCoords: return "uniform";
    case GenMethod::kUniformMatching: return "matching";
    case GenMethod::kExponential: return "exp";
  }
  return "?";
}

std::optional<GenMethod> method_from_name(std::string_view name) {
  for (auto method : {GenMethod::kSequential, GenMethod::kUniformCoords,
                      GenMethod::kUniformMatching, GenMethod::kExponential}) {
    if (method_name(method) == name) return method;
  }
  return std::nullopt;
}

ChordDiagram pairing_given_process(const ExponentialProcess& process,
                                   std::size_t chords, Rng& rng) {
  const std::vector<double> right = normalized_rights(process, chords);
  std::vector<double> left(chords);
  for (std::size_t k = 1; k <= chords; ++k) left[k - 1] = draw_left(right, k, rng).left;

  // Two left ends can coincide; redraw the later chord until all differ.
  std::vector<std::size_t> order(chords);
  for (;;) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return left[a] != left[b] ? left[a] < left[b] : a < b;
    });
    bool clash = false;
    for (std::size_t i = 1; i < chords; ++i) {
      if (left[order[i]] == left[order[i - 1]]) {
        const std::size_t k = std::max(order[i], order[i - 1]) + 1;
        left[k - 1] = draw_left(right, k, rng).left;
        clash = true;
        break;
      }
    }
    if (!clash) break;
  }

  std::vector<double> values(2 * chords);
  for (std::size_t k = 0; k < chords; ++k) {
    values[2 * k] = left[k];
    values[2 * k + 1] = right[k];
  }
  return diagram_from_paired_values(values);
}

ExponentialPairing pairing_from_exponential(std::uint32_t n, std::uint32_t m,
                                            Rng& rng) {
  check_nm(n, m);
  const std::size_t chords = std::size_t{n} * m;
  ExponentialProcess process = sample_exponential_process(chords + 1, rng);
  ChordDiagram diagram = pairing_given_process(process, chords, rng);
  return {std::move(diagram), std::move(process)};
}

ChordDiagram pairing_from_uniform(std::uint32_t n, std::uint32_t m, Rng& rng) {
  check_nm(n, m);
  const std::size_t points = 2 * std::size_t{n} * m;
  std::vector<double> values(points);
  for (auto& x : values) x = rng.uniform();
  std::vector<std::size_t> order(points);
  for (;;) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return values[a] != values[b] ? values[a] < values[b] : a < b;
    });
    bool clash = false;
    for (std::size_t i = 1; i < points; ++i) {
      if (values[order[i]] == values[order[i - 1]]) {
        values[std::max(order[i], order[i - 1])] = rng.uniform();
        clash = true;
        break;
      }
    }
    if (!clash) break;
  }
  return diagram_from_paired_values(values);
}

ChordDiagram pairing_from_matching(std::uint32_t n, std::uint32_t m, Rng& rng) {
  check_nm(n, m);
  const std::uint32_t points = 2 * n * m;
  // Free points live in pool[0..free); where[p-1] is p's slot.
  std::vector<std::uint32_t> pool(points);
  std::vector<std::uint32_t> where(points);
  std::iota(pool.begin(), pool.end(), 1u);
  std::iota(where.begin(), where.end(), 0u);
  std::uint32_t free = points;
  auto take = [&](std::uint32_t slot) {
    const std::uint32_t p = pool[slot];
    const std::uint32_t last = pool[--free];
    pool[slot] = last;
    where[last - 1] = slot;
    where[p - 1] = points;  // matched
    return p;
  };

  std::vector<std::uint32_t> partner(points, 0);
  for (std::uint32_t p = 1; p <= points; ++p) {
    if (partner[p - 1] != 0) continue;
    take(where[p - 1]);
    const std::uint32_t q = take(static_cast<std::uint32_t>(rng.below(free)));
    partner[p - 1] = q;
    partner[q - 1] = p;
  }
  return ChordDiagram(std::move(partner));
}

MultiGraph graph_sequential(std::uint32_t n, std::uint32_t m, Rng& rng,
                            std::optional<double> delta) {
  check_nm(n, m);
  std::vector<std::pair<Vertex, Vertex>> pairs;
  pairs.reserve(std::size_t{n} * m);
  auto block = [m](std::uint32_t s) { return (s - 1) / m + 1; };

  if (!delta) {
    const std::uint32_t steps = n * m;
    // Every existing edge end, twice per earlier step.
    std::vector<std::uint32_t> ends;
    ends.reserve(2 * std::size_t{steps});
    for (std::uint32_t t = 1; t <= steps; ++t) {
      const std::uint64_t k = rng.below(2 * std::uint64_t{t} - 1);
      const std::uint32_t target =
          k == 2 * std::uint64_t{t - 1} ? t : ends[static_cast<std::size_t>(k)];
      ends.push_back(target);
      ends.push_back(t);
      pairs.emplace_back(block(target), block(t));
    }
    return MultiGraph::from_pairs(n, m, pairs);
  }

  const double d = *delta;
  require(std::isfinite(d) && d >= -1.0, "sequential: delta must be >= -1");
  require(m == 1, "sequential: delta is only defined for m = 1");
  // Vertex i appears deg(i) - 1 times in `extra`; the remaining 1 + delta of
  // its weight is spread uniformly.
  std::vector<std::uint32_t> extra;
  extra.reserve(n);
  pairs.emplace_back(1, 1);
  extra.push_back(1);
  for (std::uint32_t t = 1; t < n; ++t) {
    const double td = static_cast<double>(t);
    const double total = td * (2.0 + d) + (1.0 + d);
    const double x = rng.uniform() * total;
    std::uint32_t target;
    if (x < td) {
      target = extra[static_cast<std::size_t>(rng.below(extra.size()))];
    } else if (x < td + td * (1.0 + d)) {
      target = static_cast<std::uint32_t>(rng.below(t)) + 1;
    } else {
      target = t + 1;
    }
    extra.push_back(target);
    pairs.emplace_back(target, t + 1);
  }
  return MultiGraph::from_pairs(n, 1, pairs);
}

Sample generate(std::uint32_t n, std::uint32_t m, GenMethod method, Rng& rng,
                std::optional<double> delta) {
  check_nm(n, m);
  if (delta && method != GenMethod::kSequential) {
    fail(ErrorCode::kInvalidArgument,
         "generate: delta requires the sequential method");
  }
  switch (method) {
    case GenMethod::kSequential:
      return {graph_sequential(n, m, rng, delta), std::nullopt};
    case GenMethod::kUniformCoords:
      return {phi_collapsed(pairing_from_uniform(n, m, rng).partners(), m),
              std::nullopt};
    case GenMethod::kUniformMatching:
      return {phi_collapsed(pairing_from_matching(n, m, rng).partners(), m),
              std::nullopt};
    case GenMethod::kExponential: break;
  }
  const std::size_t chords = std::size_t{n} * m;
  ExponentialProcess process = sample_exponential_process(chords + 1, rng);
  const std::vector<double> right = normalized_rights(process, chords);
  std::vector<std::pair<Vertex, Vertex>> pairs;
  pairs.reserve(chords);
  for (std::size_t k = 1; k <= chords; ++k) {
    const std::size_t vertex = draw_left(right, k, rng).vertex;
    pairs.emplace_back(static_cast<Vertex>((vertex - 1) / m + 1),
                       static_cast<Vertex>((k - 1) / m + 1));
  }
  return {MultiGraph::from_pairs(n, m, pairs), std::move(process)};
}

}  // namespace brpa
