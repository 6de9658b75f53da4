#pragma once

#include <vector>

#include "augpulse/circuit/circuit.hpp"

namespace augpulse {

struct DagEdge {
  int from;
  int to;
  int qubit;
  bool operator==(const DagEdge&) const = default;
};

// Dependency graph of a circuit. Nodes are kept in a topological order; an
// edge links consecutive nodes on the same qubit wire.
class Dag {
 public:
  explicit Dag(int num_qubits = 0);

  int num_qubits() const { return num_qubits_; }
  int size() const { return static_cast<int>(nodes_.size()); }
  const Gate& node(int i) const { return nodes_[i]; }
  const std::vector<Gate>& nodes() const { return nodes_; }

  // Node ids touching qubit q, in wire order.
  const std::vector<int>& wire(int q) const { return wires_[q]; }
  std::vector<DagEdge> edges() const;
  std::vector<int> predecessors(int node) const;
  std::vector<int> successors(int node) const;

  // Appends a node after every existing node on its wires.
  int push_back(Gate g);

 private:
  int num_qubits_;
  std::vector<Gate> nodes_;
  std::vector<std::vector<int>> wires_;
  std::vector<std::vector<int>> wire_pos_;  // per node, index in each wire
};

Dag to_dag(const Circuit& c);
Circuit from_dag(const Dag& d);

}  // namespace augpulse
