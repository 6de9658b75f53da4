#include "augpulse/circuit/dag.hpp"

#include <algorithm>

#include "augpulse/errors.hpp"

namespace augpulse {

Dag::Dag(int num_qubits) : num_qubits_(num_qubits), wires_(num_qubits) {}

int Dag::push_back(Gate g) {
  const int id = size();
  std::vector<int> pos;
  for (int q : g.qubits) {
    if (q < 0 || q >= num_qubits_) throw InvalidGate("dag: qubit out of range");
    pos.push_back(static_cast<int>(wires_[q].size()));
    wires_[q].push_back(id);
  }
  nodes_.push_back(std::move(g));
  wire_pos_.push_back(std::move(pos));
  return id;
}

std::vector<DagEdge> Dag::edges() const {
  std::vector<DagEdge> out;
  for (int q = 0; q < num_qubits_; ++q)
    for (size_t i = 1; i < wires_[q].size(); ++i)
      out.push_back({wires_[q][i - 1], wires_[q][i], q});
  return out;
}

std::vector<int> Dag::predecessors(int node) const {
  std::vector<int> out;
  const auto& g = nodes_[node];
  for (size_t k = 0; k < g.qubits.size(); ++k) {
    int p = wire_pos_[node][k];
    if (p > 0) out.push_back(wires_[g.qubits[k]][p - 1]);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<int> Dag::successors(int node) const {
  std::vector<int> out;
  const auto& g = nodes_[node];
  for (size_t k = 0; k < g.qubits.size(); ++k) {
    const auto& w = wires_[g.qubits[k]];
    size_t p = static_cast<size_t>(wire_pos_[node][k]) + 1;
    if (p < w.size()) out.push_back(w[p]);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Dag to_dag(const Circuit& c) {
  Dag d(c.num_qubits);
  for (const auto& g : c.gates) d.push_back(g);
  return d;
}

Circuit from_dag(const Dag& d) {
  Circuit c(d.num_qubits());
  c.gates = d.nodes();
  return c;
}

}  // namespace augpulse
