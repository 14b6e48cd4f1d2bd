"""A small seeded hunt for modules that would settle one of the open questions.

Short local algebras of Hilbert type (2, 1) over F_2 are sampled together with
random modules.  Every verdict is bound-truncated, so a hit would be a
candidate to examine further rather than a proof.  Re-running with the same
seed reproduces the report byte for byte.
"""

from gorenstein_lab.explorer import SearchSpec, run_search, short_local_survey

report = run_search(SearchSpec(trials=40, seed=7, bound=5))
print(report.summary())

survey = short_local_survey(samples=4, modules=4, bound=5)
print(f"\nshort local survey over {survey['algebras']} algebras:")
for key in ("local_projective_dual", "short_local_phi"):
    print(f"  {key}: {survey[key]}")
