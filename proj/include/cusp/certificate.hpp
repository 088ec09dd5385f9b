#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cusp/complex2.hpp"
#include "cusp/metric.hpp"

namespace cusp {

enum class MoveKind { face_cross, backtrack_insert, backtrack_delete };

std::string to_string(MoveKind k);

// One combinatorial step of a homotopy between edge paths.
//
// face_cross: the edges at [position, position + replaced.size()) run along
// part of the face boundary and are swapped for the rest of that boundary,
// traversed the other way round (replacement, in path order).
// backtrack_insert: at vertex index position, insert edge then its reverse.
// backtrack_delete: edges position and position+1 are one edge traversed
// there and back; both are removed.
//
// Positions never wrap around a closed path: loops keep their basepoint.
struct ElementaryMove {
  MoveKind         kind = MoveKind::face_cross;
  int              position = 0;
  int              face = -1;
  int              edge = -1;
  std::vector<int> replaced;
  std::vector<int> replacement;

  bool operator==(ElementaryMove const&) const = default;
};

ElementaryMove face_cross(int face, int position, std::vector<int> replaced,
                          std::vector<int> replacement);
ElementaryMove backtrack_insert(int position, int edge);
ElementaryMove backtrack_delete(int position, int edge);

// Applies m to p in place; throws Error describing the first mismatch.
void apply_move(Complex2 const& c, EdgePath& p, ElementaryMove const& m);

struct HomotopyCertificate {
  EdgePath                    start;
  std::vector<ElementaryMove> moves;
  EdgePath                    end;
  std::vector<int>            region;  // sorted vertex ids
};

// Replays moves from start and fills end and region. Throws Error with
// "replay mismatch at move k" on failure.
HomotopyCertificate replay_certificate(Complex2 const& c, EdgePath start,
                                       std::vector<ElementaryMove> moves);

struct CertificateReport {
  bool                     valid = true;
  std::vector<std::string> problems;
};

CertificateReport verify_certificate(Complex2 const&            c,
                                     HomotopyCertificate const& cert,
                                     std::vector<int> const*    forbidden = nullptr);

// Records moves on a working path and keeps the visited region.
class HomotopyBuilder {
 public:
  HomotopyBuilder(Complex2 const& c, EdgePath start);

  Complex2 const& complex() const noexcept { return *_c; }
  EdgePath const& path() const noexcept { return _path; }
  std::size_t     move_count() const noexcept { return _moves.size(); }
  std::vector<ElementaryMove> const& moves() const noexcept { return _moves; }

  void apply(ElementaryMove const& m);

  // Crosses the face along the sub-path [position, position + length).
  // Returns false (and does nothing) if the sub-path does not run along the
  // face boundary.
  bool cross(int face, int position, int length);
  void insert_backtrack(int position, int edge);
  void delete_backtrack(int position);

  // First face of the given kind through edge `position` along which the
  // sub-path of this length runs, optionally containing a given vertex.
  std::optional<int> matching_face(FaceKind kind, int position, int length,
                                   int containing = -1) const;

  // Deletes backtracks inside [from, to) until none is left; returns the new
  // range end.
  int reduce(int from, int to);

  HomotopyCertificate certificate() const;
  // Certificate of the moves recorded between two move counts, starting
  // from the path the builder had at the first one.
  HomotopyCertificate segment(EdgePath const& start, std::size_t from,
                              std::size_t to) const;

 private:
  Complex2 const*             _c;
  EdgePath                    _start;
  EdgePath                    _path;
  std::vector<ElementaryMove> _moves;
  std::set<int>               _region;
};

}  // namespace cusp
