"""
Test package for the elliptical path spectra project.
"""
