#!/usr/bin/env python3
"""
Example script: a small probability model, its set chain and a query
"""

import sys
from pathlib import Path

# Add src to path so we can import pyvbs
sys.path.insert(0, str(Path(__file__).parent / "src"))

import pyvbs
from pyvbs.inference import OperationCounter, verify_chain

model = pyvbs.model("probability")
for name in ["x1", "x2", "x3", "x4"]:
    model.add_variable(name, ["t", "f"])

model.add_factor(["x1", "x2"], [0.3, 0.2, 0.1, 0.4])
model.add_factor(["x2", "x3"], [0.5, 0.5, 0.25, 0.75])
model.add_factor(["x3", "x4"], [0.9, 0.1, 0.4, 0.6])

tree = model.markov_tree()
print(f"Markov tree with {len(tree)} nodes:")
for node in range(len(tree)):
    print(f"  node {node} {tree.label(node)}")

# Set chain of node marginals, checked against the brute-force joint
chain = model.setchain()
report = verify_chain(chain, model.assignment())
print(f"set chain deviation: {report.max_deviation:.3g}")

# x1 and x4 sit at opposite ends of the tree
answer = model.query("x1=t & !x4=f")
print(f"P(x1=t, x4=t) = {answer.value:.6f}")
for line in answer.plan.describe():
    print(f"  {line}")

full = OperationCounter()
model.propagate(counter=full)
print(f"query used {answer.counter.operations} operations, "
      f"full propagation {full.operations}")

model.save("example.model")
print("Model saved as: example.model")
