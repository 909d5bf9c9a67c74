"""misuseforge: example-driven security-API misuse detection and repair hints.

Pipeline:
    <insecure, secure> snippet pair -> diff -> pattern (template + abstract fix)
    program directory -> model -> slice-backed template matching -> findings
    findings + pattern -> variable-customized fix suggestions
"""

__version__ = "0.1.0"
