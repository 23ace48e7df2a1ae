"""Screening charges and their kernels, compared against the character.

The W-algebra of a good grading is the intersection of the kernels of one
screening charge per equivalence class of the restricted base, inside the
vacuum module of the degree-zero currents tensored with the neutral
fermions.  At generic level the graded dimensions of that kernel agree
with the free-superalgebra character on the centralizer of f.
"""

from vertexscreen import (expected_character, exponential_screenings,
                          generic_screenings, kernel_basis, preset_context)

for preset, weights2, use_exp in (
        ("sl2-regular", range(0, 13, 2), True),
        ("osp1_2-regular", range(0, 8), True),
        ("sl3-subregular", range(0, 7, 2), False),
        ("sl3-subregular-cartan", range(0, 7), True)):
    ctx = preset_context(preset)
    ops = exponential_screenings(ctx) if use_exp else generic_screenings(ctx)
    char = expected_character(ctx.datum, ctx.grading, max(weights2))
    print("== %s: %s ==" % (preset, ", ".join(op.label for op in ops)))
    for w2 in weights2:
        rep = kernel_basis(ctx, ops, w2, expected=char[w2])
        marker = "ok" if rep.kernel_dim == rep.expected_dim else "MISMATCH"
        print("  weight %4s: ambient %3d  kernel %2d  expected %2d  [%s]"
              % ("%d/2" % w2 if w2 % 2 else str(w2 // 2), rep.ambient_dim,
                 rep.kernel_dim, rep.expected_dim, marker))
    rep = kernel_basis(ctx, ops, weights2[-1], expected=char[max(weights2)])
    print("  denominators crossed:", sorted(rep.denominators))

print()
print("One kernel vector of osp(1|2) at weight 3/2 (the odd generator):")
ctx = preset_context("osp1_2-regular")
rep = kernel_basis(ctx, exponential_screenings(ctx), 3, expected=1)
print(" ", rep.basis_fields[0])
