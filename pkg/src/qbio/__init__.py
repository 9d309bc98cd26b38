"""Quantum bounds and desk-scale quantum simulations for biophysics questions.

Subpackages by topic:

``qbio.quantum``     states, operators, partial trace, concurrence
``qbio.units``       SI quantities with dimension checks
``qbio.bounds``      closed-form clock, folding, motor and decoherence bounds
``qbio.grover``      Grover iteration condition and statevector simulator
``qbio.lindblad``    GKSL master equation, double well, Zeno and DFS scenarios
``qbio.replicator``  classical, Grover and decoherence-triggered replicator search
"""

__version__ = "0.1.0"
