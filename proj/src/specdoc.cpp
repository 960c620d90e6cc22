namespace ainf {}
