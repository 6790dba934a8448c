"""Reading and writing the instance and solution formats.

The tuple-set .dat format is the interchange format; .dzn mirrors it as
MiniZinc-style data assignments (emit only); JSON is the canonical machine
format. Solution files carry a permutation as a tour or as positions, plus
an optional cost claim that the audit trail recomputes and checks.
"""

from ctwkit import (
    emit_dat,
    emit_dzn,
    emit_json,
    parse_dat,
    parse_solution,
    validate_external,
)

text = """\
k = 5;
b = 2;
AtomicConstraints = {<3,4>, <4,1>, <5,4>};
SoftAtomicConstraints = {};
DisjunctiveConstraints = {<2,5,2,1>};
DirectSuccessors = {4,};
"""

inst = parse_dat(text)  # trailing commas inside the braces are fine
print("parsed:", f"k={inst.k}", f"b={inst.b}", f"atomic={inst.atomic}")

print("\n--- .dat (canonical ordering) ---")
print(emit_dat(inst), end="")

print("\n--- .dzn ---")
print(emit_dzn(inst), end="")

print("\n--- .json ---")
print(emit_json(inst), end="")

round_tripped = parse_dat(emit_dat(inst))
assert round_tripped.canonical() == inst.canonical()
print("\n.dat round-trip preserved the instance")

solution_text = """\
# a solver's claim about this instance
instance demo
tour 5 3 4 2 1
claimed S=1 M=1 L=2 N=1 objective=161
"""
sol = parse_solution(solution_text)
print(f"solution: kind={sol.kind}, values={sol.values}, claimed={sol.claimed}")

row = validate_external(inst, sol)
print(f"audit: state={row.state.value}, recomputed objective="
      f"{row.breakdown.objective}, flags={row.flags}")
