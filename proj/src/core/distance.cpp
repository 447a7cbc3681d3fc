#include "core/distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vpmcf {

double DistanceField::min_value() const {
  return *std::min_element(values_.begin(), values_.end());
}

double DistanceField::max_value() const {
  return *std::max_element(values_.begin(), values_.end());
}

namespace {

constexpr int64_t kFar = int64_t{1} << 50;

int64_t floor_div(int64_t a, int64_t b) {
  int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// One pass of the separable squared-distance transform along a contiguous
// line: out[u] = min_v (u - v)^2 + g[v].  Integer-exact lower-envelope scan.
void envelope_line(const int64_t* g, int64_t* out, int64_t n,
                   std::vector<int64_t>& site, std::vector<int64_t>& start) {
  auto value = [&](int64_t x, int64_t i) {
    const int64_t d = x - i;
    return d * d + g[i];
  };
  auto separator = [&](int64_t i, int64_t u) {
    return floor_div(u * u - i * i + g[u] - g[i], 2 * (u - i));
  };

  int64_t q = 0;
  site[0] = 0;
  start[0] = 0;
  for (int64_t u = 1; u < n; ++u) {
    while (q >= 0 && value(start[q], site[q]) > value(start[q], u)) --q;
    if (q < 0) {
      q = 0;
      site[0] = u;
      start[0] = 0;
    } else {
      const int64_t w = 1 + separator(site[q], u);
      if (w < n) {
        ++q;
        site[q] = u;
        start[q] = w;
      }
    }
  }
  for (int64_t u = n - 1; u >= 0; --u) {
    out[u] = value(u, site[q]);
    if (u == start[q]) --q;
  }
}

// Squared-distance transform of `field` in place: entries hold 0 at sites and
// kFar elsewhere on input, and the squared lattice distance to the nearest
// site on output.  Works on an arbitrary box with C-order strides.
void squared_distance_transform(std::vector<int64_t>& field, int ndim, const Index3& dims) {
  const Index3 strides{dims[1] * dims[2], dims[2], 1};

  // First axis: plain two-sweep nearest-site scan, then square.
  {
    const int64_t n = dims[0], stride = strides[0];
    for (int64_t j = 0; j < dims[1]; ++j) {
      for (int64_t k = 0; k < dims[2]; ++k) {
        int64_t* line = field.data() + j * strides[1] + k;
        int64_t d = kFar;
        for (int64_t i = 0; i < n; ++i) {
          d = (line[i * stride] == 0) ? 0 : (d >= kFar ? kFar : d + 1);
          line[i * stride] = d;
        }
        d = kFar;
        for (int64_t i = n - 1; i >= 0; --i) {
          d = (line[i * stride] == 0) ? 0 : (d >= kFar ? kFar : d + 1);
          if (d < line[i * stride]) line[i * stride] = d;
        }
        for (int64_t i = 0; i < n; ++i) {
          int64_t& v = line[i * stride];
          v = (v >= kFar) ? kFar : v * v;
        }
      }
    }
  }

  std::vector<int64_t> site(static_cast<size_t>(std::max({dims[0], dims[1], dims[2]})));
  std::vector<int64_t> start(site.size());
  std::vector<int64_t> in(site.size());
  std::vector<int64_t> out(site.size());

  auto run_lines = [&](int axis, auto line_base) {
    const int64_t n = dims[axis], stride = strides[axis];
    for (int64_t* base : line_base) {
      for (int64_t u = 0; u < n; ++u) in[static_cast<size_t>(u)] = base[u * stride];
      envelope_line(in.data(), out.data(), n, site, start);
      for (int64_t u = 0; u < n; ++u) base[u * stride] = out[static_cast<size_t>(u)];
    }
  };

  for (int axis = 1; axis < ndim; ++axis) {
    std::vector<int64_t*> lines;
    if (axis == 1) {
      for (int64_t a = 0; a < dims[0]; ++a) {
        for (int64_t c = 0; c < dims[2]; ++c) {
          lines.push_back(field.data() + a * strides[0] + c);
        }
      }
    } else {
      for (int64_t a = 0; a < dims[0]; ++a) {
        for (int64_t b = 0; b < dims[1]; ++b) {
          lines.push_back(field.data() + a * strides[0] + b * strides[1]);
        }
      }
    }
    run_lines(axis, lines);
  }
}

}  // namespace

DistanceField signed_distance(const GridSet& set) {
  const auto& g = set.geometry();
  const int64_t inside = set.count();
  require(inside > 0 && inside < set.cell_count(), ErrorCode::no_boundary,
          "signed distance requires a set with a boundary (nonempty set and complement)");

  // Work on the half-spacing lattice: point q has coordinate q * spacing / 2,
  // cell centers sit at odd indices, cell corners and face planes at even
  // ones.  Every point of an interface face that can be nearest to a cell
  // center is itself a half-lattice point (per-axis clamping of a half-integer
  // to a whole-cell interval lands on the 3 sampled stations of the face), so
  // a point transform over the marked face stations is exact.
  Index3 ddims{1, 1, 1};
  for (int k = 0; k < g.ndim; ++k) ddims[k] = 2 * g.dims[k] + 1;
  const Index3 dstrides{ddims[1] * ddims[2], ddims[2], 1};
  std::vector<int64_t> field(static_cast<size_t>(ddims[0] * ddims[1] * ddims[2]), kFar);

  auto mark_face = [&](const Index3& cell, int axis) {
    Index3 base{0, 0, 0};
    for (int k = 0; k < g.ndim; ++k) base[k] = 2 * cell[k];
    base[axis] = 2 * (cell[axis] + 1);
    if (g.ndim == 2) {
      const int other = axis == 0 ? 1 : 0;
      for (int64_t t = 0; t <= 2; ++t) {
        Index3 p = base;
        p[other] += t;
        field[static_cast<size_t>(p[0] * dstrides[0] + p[1] * dstrides[1] + p[2])] = 0;
      }
    } else {
      const int o1 = axis == 0 ? 1 : 0;
      const int o2 = axis == 2 ? 1 : 2;
      for (int64_t t1 = 0; t1 <= 2; ++t1) {
        for (int64_t t2 = 0; t2 <= 2; ++t2) {
          Index3 p = base;
          p[o1] += t1;
          p[o2] += t2;
          field[static_cast<size_t>(p[0] * dstrides[0] + p[1] * dstrides[1] + p[2])] = 0;
        }
      }
    }
  };

  Index3 idx{0, 0, 0};
  for (idx[0] = 0; idx[0] < g.dims[0]; ++idx[0]) {
    for (idx[1] = 0; idx[1] < g.dims[1]; ++idx[1]) {
      for (idx[2] = 0; idx[2] < g.dims[2]; ++idx[2]) {
        const bool v = set.at(idx);
        for (int axis = 0; axis < g.ndim; ++axis) {
          if (idx[axis] + 1 >= g.dims[axis]) continue;
          Index3 nb = idx;
          ++nb[axis];
          if (set.at(nb) != v) mark_face(idx, axis);
        }
      }
    }
  }

  squared_distance_transform(field, g.ndim, ddims);

  std::vector<double> values(static_cast<size_t>(g.cell_count()));
  const double half = 0.5 * g.spacing;
  for (idx[0] = 0; idx[0] < g.dims[0]; ++idx[0]) {
    for (idx[1] = 0; idx[1] < g.dims[1]; ++idx[1]) {
      for (idx[2] = 0; idx[2] < g.dims[2]; ++idx[2]) {
        Index3 p{2 * idx[0] + 1, 2 * idx[1] + 1, g.ndim == 3 ? 2 * idx[2] + 1 : 0};
        const int64_t sq = field[static_cast<size_t>(p[0] * dstrides[0] + p[1] * dstrides[1] + p[2])];
        const double d = half * std::sqrt(static_cast<double>(sq));
        values[static_cast<size_t>(g.linear(idx))] = set.at(idx) ? -d : d;
      }
    }
  }
  return DistanceField(g, std::move(values));
}

std::vector<double> center_distance_field(const GridSet& set) {
  const auto& g = set.geometry();
  require(set.count() > 0, ErrorCode::invalid_argument,
          "center distance field requires a nonempty set");
  std::vector<int64_t> field(static_cast<size_t>(g.cell_count()), kFar);
  for (int64_t lin = 0; lin < g.cell_count(); ++lin) {
    if (set.at(lin)) field[static_cast<size_t>(lin)] = 0;
  }
  squared_distance_transform(field, g.ndim, g.dims);
  std::vector<double> out(field.size());
  for (size_t i = 0; i < field.size(); ++i) {
    out[i] = g.spacing * std::sqrt(static_cast<double>(field[i]));
  }
  return out;
}

}  // namespace vpmcf
