#include "flg/partition.hpp"

#include <string>
#include <unordered_map>

#include "flg/errors.hpp"

namespace flg {

PartitionedYbus partition(const AdmittanceMatrix& am, const GridCase& c) {
  std::unordered_map<int, BusKind> kind_of;
  kind_of.reserve(c.buses.size());
  for (const Bus& b : c.buses) kind_of.emplace(b.id, b.kind);

  PartitionedYbus p;
  std::vector<Eigen::Index> gidx, lidx;
  for (std::size_t i = 0; i < am.bus_ids.size(); ++i) {
    const int id = am.bus_ids[i];
    const auto it = kind_of.find(id);
    if (it == kind_of.end())
      throw MissingKind("bus " + std::to_string(id) +
                        " has no generator/load classification in the case");
    if (it->second == BusKind::Generator) {
      p.gen_order.push_back(id);
      gidx.push_back(static_cast<Eigen::Index>(i));
    } else {
      p.load_order.push_back(id);
      lidx.push_back(static_cast<Eigen::Index>(i));
    }
  }

  p.Y_GG = am.Y(gidx, gidx);
  p.Y_GL = am.Y(gidx, lidx);
  p.Y_LG = am.Y(lidx, gidx);
  p.Y_LL = am.Y(lidx, lidx);
  return p;
}

double transpose_check(const PartitionedYbus& p) {
  if (p.Y_LG.size() == 0) return 0.0;
  return (p.Y_LG - p.Y_GL.transpose()).cwiseAbs().maxCoeff();
}

}  // namespace flg
