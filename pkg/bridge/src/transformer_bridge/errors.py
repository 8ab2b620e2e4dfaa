class BridgeError(Exception):
    """Raised for anything the caller can fix: bad files, bad names, missing
    checkpoints, resource exhaustion.  The message always carries a
    remediation hint where one exists."""
