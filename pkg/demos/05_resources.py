"""
Gate and qubit budgets
======================

Counts under the estimator's documented model, next to the asymptotic class
of each noise family.
"""

from nuwalk.experiments import Cycle, Line, classical_equivalent_steps, resource_estimate

for target, p in [("coin", 0.0), ("coin", 0.1), ("position", 0.1), ("both", 0.1)]:
    est = resource_estimate(Line(100), target, p)
    print(f"line T=100 {target:8s} p={p}: {est.quantum_gates} gates, {est.qubits} qubits  {est.gate_class}")

est = resource_estimate(Cycle(29, 102), "position", 0.2511)
print(f"cycle N=29 M=102: {est.quantum_gates} gates, {est.qubits} qubits  {est.qubit_class}")
print("classical steps to match T=100:", classical_equivalent_steps(100))
