#include "strongl/goeritz.hpp"

#include <cstdlib>
#include <queue>

namespace strongl {

GoeritzData goeritz_matrix(const Diagram& d) {
  if (d.crossingless()) throw Error(ErrorCode::Crossingless, "Goeritz matrix needs a crossing");
  if (!validate(d).connected) throw Error(ErrorCode::NotConnected, "Goeritz matrix needs a connected diagram");
  const Faces f = faces(d);
  GoeritzData g;
  g.coloring.assign(static_cast<std::size_t>(f.count()), -1);

  // Faces on the two sides of the edge at half-edge h: corners (s-1, s) and (s, s+1).
  std::vector<std::vector<int>> adjacent(static_cast<std::size_t>(f.count()));
  for (int h = 0; h < d.half_edge_count(); ++h) {
    const int x = f.face_of_half_edge[static_cast<std::size_t>(h)];
    const int y = f.face_of_half_edge[static_cast<std::size_t>(Diagram::rotate(h, 1))];
    adjacent[static_cast<std::size_t>(x)].push_back(y);
    adjacent[static_cast<std::size_t>(y)].push_back(x);
  }
  const int white_parity = 1 - a_corner_parity(d, 0);
  const int seed = f.corner_face(0, white_parity);
  std::queue<int> q;
  g.coloring[static_cast<std::size_t>(seed)] = 0;
  q.push(seed);
  while (!q.empty()) {
    const int x = q.front();
    q.pop();
    for (int y : adjacent[static_cast<std::size_t>(x)]) {
      auto& cy = g.coloring[static_cast<std::size_t>(y)];
      if (cy < 0) {
        cy = 1 - g.coloring[static_cast<std::size_t>(x)];
        q.push(y);
      } else if (cy == g.coloring[static_cast<std::size_t>(x)]) {
        throw Error(ErrorCode::NonSphericalEmbedding, "faces admit no checkerboard colouring");
      }
    }
  }

  std::vector<int> row(static_cast<std::size_t>(f.count()), -1);
  for (int i = 0; i < f.count(); ++i) {
    if (g.coloring[static_cast<std::size_t>(i)] == 0) {
      row[static_cast<std::size_t>(i)] = static_cast<int>(g.white_faces.size());
      g.white_faces.push_back(i);
    }
  }
  const int w = static_cast<int>(g.white_faces.size());
  g.full = SignedMatrix(w);
  for (int c = 0; c < d.crossing_count(); ++c) {
    const int parity = g.coloring[static_cast<std::size_t>(f.corner_face(c, 0))] == 0 ? 0 : 1;
    // +1 when the white corners are the ones not swept by the over-strand.
    const int eta = parity == a_corner_parity(d, c) ? -1 : 1;
    const int i = row[static_cast<std::size_t>(f.corner_face(c, parity))];
    const int j = row[static_cast<std::size_t>(f.corner_face(c, parity + 2))];
    if (i == j) continue;
    g.full(i, j) -= eta;
    g.full(j, i) -= eta;
    g.full(i, i) += eta;
    g.full(j, j) += eta;
  }
  g.matrix = g.full.principal_minor_without({0});
  return g;
}

long long link_determinant(const Diagram& d) {
  const ValidationReport r = validate(d);
  if (r.components == 0) return 1;
  if (r.components > 1) return 0;
  if (d.crossingless()) return 1;
  return std::llabs(determinant(goeritz_matrix(d).matrix));
}

}  // namespace strongl
