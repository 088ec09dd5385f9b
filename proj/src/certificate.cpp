#include "cusp/certificate.hpp"

#include <algorithm>

#include "cusp/error.hpp"

namespace cusp {

namespace {

using Step = std::pair<int, int>;  // (start vertex, edge)

// Vertex walk of an edge list from a start vertex; nullopt if it breaks.
std::optional<std::vector<int>> walk(Complex2 const& c, int start,
                                     std::vector<int> const& edges) {
  std::vector<int> out{start};
  int              cur = start;
  for (int e : edges) {
    if (e < 0 || e >= c.edge_count()) return std::nullopt;
    auto const& ed = c.edge(e);
    if (ed.u != cur && ed.v != cur) return std::nullopt;
    cur = ed.other(cur);
    out.push_back(cur);
  }
  return out;
}

// The face boundary as directed steps, once in each orientation.
std::array<std::vector<Step>, 2> orientations(Face const& f) {
  std::size_t                      m = f.edges.size();
  std::array<std::vector<Step>, 2> out;
  for (std::size_t i = 0; i < m; ++i) out[0].push_back({f.vertices[i], f.edges[i]});
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t j = m - 1 - i;
    out[1].push_back({f.vertices[(j + 1) % m], f.edges[j]});
  }
  return out;
}

bool is_rotation(std::vector<Step> const& a, std::vector<Step> const& b) {
  if (a.size() != b.size()) return false;
  std::size_t m = a.size();
  for (std::size_t r = 0; r < m; ++r) {
    bool ok = true;
    for (std::size_t i = 0; i < m && ok; ++i) ok = a[i] == b[(i + r) % m];
    if (ok) return true;
  }
  return false;
}

[[noreturn]] void mismatch(std::string const& what) { throw Error(what); }

std::string edges_string(std::vector<int> const& e) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
  return "[" + s + "]";
}

}  // namespace

std::string to_string(MoveKind k) {
  switch (k) {
    case MoveKind::face_cross: return "face-cross";
    case MoveKind::backtrack_insert: return "backtrack-insert";
    case MoveKind::backtrack_delete: return "backtrack-delete";
  }
  return "?";
}

ElementaryMove face_cross(int face, int position, std::vector<int> replaced,
                          std::vector<int> replacement) {
  ElementaryMove m;
  m.kind        = MoveKind::face_cross;
  m.face        = face;
  m.position    = position;
  m.replaced    = std::move(replaced);
  m.replacement = std::move(replacement);
  return m;
}

ElementaryMove backtrack_insert(int position, int edge) {
  ElementaryMove m;
  m.kind     = MoveKind::backtrack_insert;
  m.position = position;
  m.edge     = edge;
  return m;
}

ElementaryMove backtrack_delete(int position, int edge) {
  ElementaryMove m;
  m.kind     = MoveKind::backtrack_delete;
  m.position = position;
  m.edge     = edge;
  return m;
}

void apply_move(Complex2 const& c, EdgePath& p, ElementaryMove const& m) {
  int n = p.length();
  switch (m.kind) {
    case MoveKind::backtrack_insert: {
      if (m.position < 0 || m.position > n) mismatch("insert position out of range");
      if (m.edge < 0 || m.edge >= c.edge_count()) mismatch("unknown edge");
      auto const& e = c.edge(m.edge);
      int         x = p.vertices[static_cast<std::size_t>(m.position)];
      if (e.u != x && e.v != x) mismatch("inserted edge does not touch the path vertex");
      auto pos = static_cast<long>(m.position);
      p.edges.insert(p.edges.begin() + pos, {m.edge, m.edge});
      p.vertices.insert(p.vertices.begin() + pos + 1, {e.other(x), x});
      return;
    }
    case MoveKind::backtrack_delete: {
      if (m.position < 0 || m.position + 2 > n) mismatch("delete position out of range");
      auto i = static_cast<std::size_t>(m.position);
      if (p.edges[i] != m.edge || p.edges[i + 1] != m.edge
          || p.vertices[i] != p.vertices[i + 2]) {
        mismatch("no backtrack along edge " + std::to_string(m.edge));
      }
      auto pos = static_cast<long>(m.position);
      p.edges.erase(p.edges.begin() + pos, p.edges.begin() + pos + 2);
      p.vertices.erase(p.vertices.begin() + pos + 1, p.vertices.begin() + pos + 3);
      return;
    }
    case MoveKind::face_cross: {
      int len = static_cast<int>(m.replaced.size());
      if (m.position < 0 || m.position + len > n) mismatch("cross position out of range");
      if (m.face < 0 || m.face >= c.face_count()) mismatch("unknown face");
      auto i = static_cast<std::size_t>(m.position);
      for (std::size_t k = 0; k < m.replaced.size(); ++k) {
        if (p.edges[i + k] != m.replaced[k]) mismatch("replaced edges are not on the path");
      }
      int  from = p.vertices[i];
      int  to   = p.vertices[i + m.replaced.size()];
      auto rep  = walk(c, from, m.replacement);
      if (!rep || rep->back() != to) {
        mismatch("replacement " + edges_string(m.replacement) + " does not join the same endpoints");
      }
      // replaced followed by the reversed replacement must be the boundary
      std::vector<Step> cycle;
      for (std::size_t k = 0; k < m.replaced.size(); ++k) {
        cycle.push_back({p.vertices[i + k], m.replaced[k]});
      }
      for (std::size_t k = m.replacement.size(); k-- > 0;) {
        cycle.push_back({(*rep)[k + 1], m.replacement[k]});
      }
      auto const& f  = c.face(m.face);
      auto        or_ = orientations(f);
      if (!is_rotation(cycle, or_[0]) && !is_rotation(cycle, or_[1])) {
        mismatch("replaced and replacement do not make up the boundary of face "
                 + std::to_string(m.face));
      }
      auto pos = static_cast<long>(m.position);
      p.edges.erase(p.edges.begin() + pos, p.edges.begin() + pos + len);
      p.edges.insert(p.edges.begin() + pos, m.replacement.begin(), m.replacement.end());
      p.vertices.erase(p.vertices.begin() + pos + 1, p.vertices.begin() + pos + len + 1);
      p.vertices.insert(p.vertices.begin() + pos + 1, rep->begin() + 1, rep->end());
      return;
    }
  }
}

HomotopyCertificate replay_certificate(Complex2 const& c, EdgePath start,
                                       std::vector<ElementaryMove> moves) {
  if (!is_edge_path(c, start) || start.vertices.empty()) {
    throw Error("certificate start is not an edge path");
  }
  HomotopyCertificate cert;
  cert.start = start;
  std::set<int> region(start.vertices.begin(), start.vertices.end());
  EdgePath      cur = std::move(start);
  for (std::size_t k = 0; k < moves.size(); ++k) {
    try {
      apply_move(c, cur, moves[k]);
    } catch (Error const& e) {
      throw Error("replay mismatch at move " + std::to_string(k) + ": " + e.what());
    }
    auto const& m = moves[k];
    if (m.kind == MoveKind::face_cross) {
      auto const& f = c.face(m.face);
      region.insert(f.vertices.begin(), f.vertices.end());
    } else if (m.kind == MoveKind::backtrack_insert) {
      region.insert(cur.vertices[static_cast<std::size_t>(m.position) + 1]);
    }
  }
  cert.moves  = std::move(moves);
  cert.end    = std::move(cur);
  cert.region.assign(region.begin(), region.end());
  return cert;
}

CertificateReport verify_certificate(Complex2 const&            c,
                                     HomotopyCertificate const& cert,
                                     std::vector<int> const*    forbidden) {
  CertificateReport report;
  auto              fail = [&](std::string s) {
    report.valid = false;
    report.problems.push_back(std::move(s));
  };
  HomotopyCertificate replayed;
  try {
    replayed = replay_certificate(c, cert.start, cert.moves);
  } catch (Error const& e) {
    fail(e.what());
    return report;
  }
  if (replayed.end.vertices != cert.end.vertices || replayed.end.edges != cert.end.edges) {
    fail("end path differs from the replayed path");
  }
  if (replayed.region != cert.region) fail("region differs from the replayed region");
  if (forbidden) {
    for (int v : replayed.region) {
      if (std::find(forbidden->begin(), forbidden->end(), v) != forbidden->end()) {
        fail("region meets forbidden vertex " + std::to_string(v));
        break;
      }
    }
  }
  return report;
}

HomotopyBuilder::HomotopyBuilder(Complex2 const& c, EdgePath start)
    : _c(&c), _start(start), _path(std::move(start)) {
  if (!is_edge_path(c, _path) || _path.vertices.empty()) {
    throw Error("not an edge path");
  }
  _region.insert(_path.vertices.begin(), _path.vertices.end());
}

void HomotopyBuilder::apply(ElementaryMove const& m) {
  apply_move(*_c, _path, m);
  if (m.kind == MoveKind::face_cross) {
    auto const& f = _c->face(m.face);
    _region.insert(f.vertices.begin(), f.vertices.end());
  } else if (m.kind == MoveKind::backtrack_insert) {
    _region.insert(_path.vertices[static_cast<std::size_t>(m.position) + 1]);
  }
  _moves.push_back(m);
}

bool HomotopyBuilder::cross(int face, int position, int length) {
  auto const& f = _c->face(face);
  auto        m = static_cast<int>(f.edges.size());
  if (position < 0 || length < 0 || length > m || position + length > _path.length()) {
    return false;
  }
  auto start = static_cast<std::size_t>(position);
  for (auto const& cyc : orientations(f)) {
    for (int r = 0; r < m; ++r) {
      bool ok = true;
      for (int k = 0; k < length && ok; ++k) {
        auto const& s = cyc[static_cast<std::size_t>((r + k) % m)];
        ok = s.first == _path.vertices[start + static_cast<std::size_t>(k)]
             && s.second == _path.edges[start + static_cast<std::size_t>(k)];
      }
      if (length == 0) ok = cyc[static_cast<std::size_t>(r)].first == _path.vertices[start];
      if (!ok) continue;
      std::vector<int> replaced(_path.edges.begin() + position,
                                _path.edges.begin() + position + length);
      std::vector<int> replacement;
      for (int k = m - 1; k >= length; --k) {
        replacement.push_back(cyc[static_cast<std::size_t>((r + k) % m)].second);
      }
      apply(face_cross(face, position, std::move(replaced), std::move(replacement)));
      return true;
    }
  }
  return false;
}

void HomotopyBuilder::insert_backtrack(int position, int edge) {
  apply(backtrack_insert(position, edge));
}

void HomotopyBuilder::delete_backtrack(int position) {
  if (position < 0 || position >= _path.length()) throw Error("delete position out of range");
  apply(backtrack_delete(position, _path.edges[static_cast<std::size_t>(position)]));
}

std::optional<int> HomotopyBuilder::matching_face(FaceKind kind, int position, int length,
                                                  int containing) const {
  if (position < 0 || length < 1 || position + length > _path.length()) return std::nullopt;
  auto start = static_cast<std::size_t>(position);
  for (int fid : _c->faces_at_edge(_path.edges[start])) {
    auto const& f = _c->face(fid);
    if (f.kind != kind) continue;
    auto m = static_cast<int>(f.edges.size());
    if (length > m) continue;
    if (containing >= 0
        && std::find(f.vertices.begin(), f.vertices.end(), containing) == f.vertices.end()) {
      continue;
    }
    for (auto const& cyc : orientations(f)) {
      for (int r = 0; r < m; ++r) {
        bool ok = true;
        for (int k = 0; k < length && ok; ++k) {
          auto const& s = cyc[static_cast<std::size_t>((r + k) % m)];
          ok = s.first == _path.vertices[start + static_cast<std::size_t>(k)]
               && s.second == _path.edges[start + static_cast<std::size_t>(k)];
        }
        if (ok) return fid;
      }
    }
  }
  return std::nullopt;
}

int HomotopyBuilder::reduce(int from, int to) {
  int i = from;
  while (i + 1 < to) {
    auto k = static_cast<std::size_t>(i);
    if (_path.edges[k] == _path.edges[k + 1] && _path.vertices[k] == _path.vertices[k + 2]) {
      delete_backtrack(i);
      to -= 2;
      if (i > from) --i;
    } else {
      ++i;
    }
  }
  return to;
}

HomotopyCertificate HomotopyBuilder::certificate() const {
  HomotopyCertificate cert;
  cert.start  = _start;
  cert.moves  = _moves;
  cert.end    = _path;
  cert.region.assign(_region.begin(), _region.end());
  return cert;
}

HomotopyCertificate HomotopyBuilder::segment(EdgePath const& start, std::size_t from,
                                             std::size_t to) const {
  std::vector<ElementaryMove> part(_moves.begin() + static_cast<long>(from),
                                   _moves.begin() + static_cast<long>(to));
  return replay_certificate(*_c, start, std::move(part));
}

}  // namespace cusp
