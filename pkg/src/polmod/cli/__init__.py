"""Command-line front end: expression parsing, job running, verification."""
