"""polsim — frequency-to-polarization entanglement transfer by local dephasing and upconversion."""

__version__ = "0.1.0"
