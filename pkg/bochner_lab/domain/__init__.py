# Domain package
# One subpackage per mathematical module.
